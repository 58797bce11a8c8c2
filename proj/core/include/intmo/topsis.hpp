#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "intmo/problem.hpp"

namespace intmo::topsis {

enum class Criterion { benefit, cost };

/// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Alternatives (rows) scored on criteria (columns), each criterion tagged
/// benefit or cost and weighted. Weights are non-negative and sum to one.
class DecisionMatrix {
 public:
  DecisionMatrix(Matrix entries, std::vector<Criterion> senses, std::vector<double> weights);

  /// Uniform weights, every criterion cost.
  explicit DecisionMatrix(Matrix entries);

  const Matrix& entries() const { return entries_; }
  const std::vector<Criterion>& senses() const { return senses_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t rows() const { return entries_.rows(); }
  std::size_t cols() const { return entries_.cols(); }

 private:
  Matrix entries_;
  std::vector<Criterion> senses_;
  std::vector<double> weights_;
};

inline constexpr double kWeightSumTolerance = 1e-12;

std::vector<double> uniform_weights(std::size_t count);

/// Objective columns followed by the violation column, all cost.
DecisionMatrix build_matrix(std::span<const Evaluation> evaluations,
                            std::optional<std::vector<double>> weights = std::nullopt);

/// Divides each column by its largest magnitude; an all-zero column stays zero.
Matrix normalize(const DecisionMatrix& m);

struct Ideals {
  std::vector<double> positive;
  std::vector<double> negative;
};

Ideals ideal_solutions(const Matrix& normalized, std::span<const Criterion> senses);

struct Distances {
  std::vector<double> d_plus;
  std::vector<double> d_minus;
  std::vector<double> closeness;
};

/// Weighted Euclidean distances to both ideals and the closeness
/// coefficient d- / (d+ + d-). When both distances vanish closeness is 1.
Distances closeness(const Matrix& normalized, const Ideals& ideals, std::span<const double> weights);

struct TopsisRanking {
  Matrix normalized;
  std::vector<double> positive_ideal;
  std::vector<double> negative_ideal;
  std::vector<double> d_plus;
  std::vector<double> d_minus;
  std::vector<double> closeness;
  /// Row indices by descending closeness, ties by ascending index.
  std::vector<std::size_t> order;
};

TopsisRanking rank(const DecisionMatrix& m);

std::size_t best_alternative(const TopsisRanking& ranking);

}  // namespace intmo::topsis
