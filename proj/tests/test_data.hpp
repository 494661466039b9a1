#pragma once

#include <string>

#include "wangbars/core.hpp"

inline std::string data_path(const std::string& name) { return std::string(WANGBARS_DATA_DIR) + "/" + name; }

inline wangbars::TileSet fig1_tiles() {
    return wangbars::TileSet({{"t1", "green", "red", "yellow", "red"},
                              {"t2", "yellow", "blue", "red", "blue"},
                              {"t3", "red", "yellow", "green", "yellow"}});
}

// Wang tiling of period 1 x 3 by the three example tiles, row 0 south.
inline wangbars::TileGrid fig1_column() { return wangbars::TileGrid(1, 3, true, {"t3", "t2", "t1"}); }

inline wangbars::TileSet single_c() { return wangbars::TileSet({{"c", "c", "c", "c", "c"}}); }
