// Copyright 2026 qpost developers
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <string>
#include <vector>

#include "qpost/errors.hpp"

namespace qpost {

/// Dimensions of a Chimera working graph: an M x C grid of bipartite cells,
/// each cell a complete K_{K,K} between a left and a right shore of K qubits.
/// Total qubits M*C*2K; with K = 4 no qubit exceeds degree 6.
struct ChimeraSpec {
    int grid_rows = 1;   // M
    int grid_cols = 1;   // C
    int shore_size = 4;  // K

    int num_vertices() const { return grid_rows * grid_cols * 2 * shore_size; }
};

/// Undirected edge, 0-based endpoints, u < v.
struct Edge {
    int u = 0;
    int v = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Canonical Chimera edge set. Vertex numbering is cell-major (row, then
/// column) with the left shore before the right shore inside each cell:
/// cell (r, c) holds vertices (r*C + c)*2K .. +2K-1. Within a cell the two
/// shores are completely connected; left-shore qubits link to the same shore
/// position in the cell below, right-shore qubits to the same position in the
/// cell to the right. Emission order: cells row-major, per cell the K*K
/// bipartite edges, then its vertical links, then its horizontal links.
inline std::vector<Edge> chimera_edges(const ChimeraSpec& spec) {
    const int rows = spec.grid_rows, cols = spec.grid_cols, shore = spec.shore_size;
    if (rows < 1 || cols < 1 || shore < 1) {
        throw ContractError("chimera_edges: all ChimeraSpec dimensions must be positive");
    }
    auto cell_base = [&](int r, int c) { return (r * cols + c) * 2 * shore; };
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(rows * cols * shore * shore +
                                           (rows - 1) * cols * shore + rows * (cols - 1) * shore));
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const int base = cell_base(r, c);
            for (int a = 0; a < shore; ++a) {
                for (int b = 0; b < shore; ++b) {
                    edges.push_back({base + a, base + shore + b});
                }
            }
            if (r + 1 < rows) {
                for (int a = 0; a < shore; ++a) {
                    edges.push_back({base + a, cell_base(r + 1, c) + a});
                }
            }
            if (c + 1 < cols) {
                for (int b = 0; b < shore; ++b) {
                    edges.push_back({base + shore + b, cell_base(r, c + 1) + shore + b});
                }
            }
        }
    }
    return edges;
}

}  // namespace qpost
