#pragma once

#include "oracles.hpp"

#include "taut/indexed_matrix.hpp"
#include "taut/rational.hpp"

#include <vector>

namespace support {

inline oracle::Q q(const taut::Rational& r) { return r.raw(); }

inline oracle::Rows rows(const taut::IndexedMatrix& m) {
    oracle::Rows out;
    for (const auto& row : m.rows()) {
        std::vector<oracle::Q> r;
        for (const auto& x : row) r.push_back(x.raw());
        out.push_back(std::move(r));
    }
    return out;
}

inline taut::Partition part(std::vector<int> parts) { return taut::Partition::canonicalize(std::move(parts)); }

} // namespace support
