#pragma once

#include <optional>
#include <vector>

#include "cybelab/mpoly.hpp"

namespace cybelab {

/// Dense matrix over Q, row-major.
using QMatrix = std::vector<std::vector<Scalar>>;
using QVector = std::vector<Scalar>;

/// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> row_reduce(QMatrix& m);

std::size_t rank(QMatrix m);

/// Unique solution of m x = b, nullopt if singular or inconsistent.
std::optional<QVector> solve_unique(const QMatrix& m, const QVector& b);

/// Basis of {x : m x = 0}.
std::vector<QVector> nullspace(const QMatrix& m, std::size_t columns);

}  // namespace cybelab
