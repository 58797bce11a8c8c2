#include "intmo/topsis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace intmo::topsis {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_)
    throw std::invalid_argument("Matrix: data size does not match " + std::to_string(rows_) + "x" +
                                std::to_string(cols_));
}

namespace {

void check_weights(std::span<const double> w, std::size_t cols) {
  if (w.size() != cols)
    throw std::invalid_argument("topsis: expected " + std::to_string(cols) + " weights, got " +
                                std::to_string(w.size()));
  double sum = 0.0;
  for (double v : w) {
    if (!(v >= 0.0)) throw std::invalid_argument("topsis: weights must be non-negative");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kWeightSumTolerance)
    throw std::invalid_argument("topsis: weights sum to " + std::to_string(sum) + ", not 1");
}

}  // namespace

DecisionMatrix::DecisionMatrix(Matrix entries, std::vector<Criterion> senses,
                               std::vector<double> weights)
    : entries_(std::move(entries)), senses_(std::move(senses)), weights_(std::move(weights)) {
  if (entries_.rows() == 0 || entries_.cols() == 0)
    throw std::invalid_argument("topsis: decision matrix must be non-empty");
  if (senses_.size() != entries_.cols())
    throw std::invalid_argument("topsis: one sense per criterion required");
  check_weights(weights_, entries_.cols());
}

DecisionMatrix::DecisionMatrix(Matrix entries)
    : DecisionMatrix(entries, std::vector<Criterion>(entries.cols(), Criterion::cost),
                     uniform_weights(entries.cols())) {}

std::vector<double> uniform_weights(std::size_t count) {
  return std::vector<double>(count, 1.0 / static_cast<double>(count));
}

DecisionMatrix build_matrix(std::span<const Evaluation> evaluations,
                            std::optional<std::vector<double>> weights) {
  if (evaluations.empty()) throw std::invalid_argument("build_matrix: no alternatives");
  const std::size_t d = evaluations.front().objectives_min.size();
  Matrix m(evaluations.size(), d + 1);
  for (std::size_t i = 0; i < evaluations.size(); ++i) {
    const auto& e = evaluations[i];
    if (e.objectives_min.size() != d)
      throw std::invalid_argument("build_matrix: evaluations disagree on objective count");
    for (std::size_t j = 0; j < d; ++j) m(i, j) = e.objectives_min[j];
    m(i, d) = e.violation;
  }
  auto w = weights ? std::move(*weights) : uniform_weights(d + 1);
  return DecisionMatrix(std::move(m), std::vector<Criterion>(d + 1, Criterion::cost), std::move(w));
}

Matrix normalize(const DecisionMatrix& m) {
  const auto& a = m.entries();
  Matrix b(a.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double largest = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) largest = std::max(largest, std::abs(a(i, j)));
    if (largest == 0.0) continue;
    for (std::size_t i = 0; i < a.rows(); ++i) b(i, j) = a(i, j) / largest;
  }
  return b;
}

Ideals ideal_solutions(const Matrix& normalized, std::span<const Criterion> senses) {
  const std::size_t cols = normalized.cols();
  if (senses.size() != cols) throw std::invalid_argument("ideal_solutions: sense count mismatch");
  Ideals ideals{std::vector<double>(cols), std::vector<double>(cols)};
  for (std::size_t j = 0; j < cols; ++j) {
    double lo = normalized(0, j);
    double hi = lo;
    for (std::size_t i = 1; i < normalized.rows(); ++i) {
      lo = std::min(lo, normalized(i, j));
      hi = std::max(hi, normalized(i, j));
    }
    if (senses[j] == Criterion::benefit) {
      ideals.positive[j] = hi;
      ideals.negative[j] = lo;
    } else {
      ideals.positive[j] = lo;
      ideals.negative[j] = hi;
    }
  }
  return ideals;
}

Distances closeness(const Matrix& normalized, const Ideals& ideals, std::span<const double> weights) {
  const std::size_t rows = normalized.rows();
  const std::size_t cols = normalized.cols();
  if (ideals.positive.size() != cols || ideals.negative.size() != cols || weights.size() != cols)
    throw std::invalid_argument("closeness: shape mismatch");

  Distances out{std::vector<double>(rows), std::vector<double>(rows), std::vector<double>(rows)};
  for (std::size_t i = 0; i < rows; ++i) {
    double plus = 0.0;
    double minus = 0.0;
    for (std::size_t j = 0; j < cols; ++j) {
      const double dp = ideals.positive[j] - normalized(i, j);
      const double dm = ideals.negative[j] - normalized(i, j);
      plus += weights[j] * dp * dp;
      minus += weights[j] * dm * dm;
    }
    out.d_plus[i] = std::sqrt(plus);
    out.d_minus[i] = std::sqrt(minus);
    const double total = out.d_plus[i] + out.d_minus[i];
    out.closeness[i] = total > 0.0 ? out.d_minus[i] / total : 1.0;
  }
  return out;
}

TopsisRanking rank(const DecisionMatrix& m) {
  TopsisRanking r;
  r.normalized = normalize(m);
  auto ideals = ideal_solutions(r.normalized, m.senses());
  auto dist = closeness(r.normalized, ideals, m.weights());
  r.positive_ideal = std::move(ideals.positive);
  r.negative_ideal = std::move(ideals.negative);
  r.d_plus = std::move(dist.d_plus);
  r.d_minus = std::move(dist.d_minus);
  r.closeness = std::move(dist.closeness);
  r.order.resize(m.rows());
  std::iota(r.order.begin(), r.order.end(), std::size_t{0});
  std::stable_sort(r.order.begin(), r.order.end(), [&](std::size_t a, std::size_t b) {
    return r.closeness[a] > r.closeness[b];
  });
  return r;
}

std::size_t best_alternative(const TopsisRanking& ranking) {
  if (ranking.order.empty()) throw std::invalid_argument("best_alternative: empty ranking");
  return ranking.order.front();
}

}  // namespace intmo::topsis
