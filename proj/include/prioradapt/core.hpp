#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "prioradapt/errors.hpp"

// Foundational value types (score matrices, posteriors, priors, labels) and
// the elementary operations on them: score normalization, multi-token label
// score composition, and argmax prediction.
//
// All probability arithmetic happens in the log domain; linear probabilities
// appear only at API boundaries. Linear outputs are floored at exp(kLogFloor)
// so serialized posteriors never round to zero.

namespace prioradapt {

inline constexpr double kLogFloor = -700.0;
inline const double kProbFloor = std::exp(kLogFloor);

// Row-major dense matrix of doubles. Deliberately minimal: the library works
// on N x K matrices with small K.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix from_rows(const std::vector<std::vector<double>>& rows) {
        if (rows.empty()) return Matrix(0, 0);
        Matrix m(rows.size(), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_)
                throw DimensionMismatch("ragged rows in matrix construction");
            std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const {
        return {data_.data() + i * cols_, cols_};
    }
    std::span<double> row(std::size_t i) {
        return {data_.data() + i * cols_, cols_};
    }

    const std::vector<double>& data() const { return data_; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// log(sum(exp(xs))) with the usual max shift; -inf when every entry is -inf.
inline double logsumexp(std::span<const double> xs) {
    double m = -std::numeric_limits<double>::infinity();
    for (double x : xs) m = std::max(m, x);
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (double x : xs) s += std::exp(x - m);
    return m + std::log(s);
}

// log(p) clamped to kLogFloor; log(0) maps to the floor instead of -inf.
inline double log_floored(double p) {
    return p > 0.0 ? std::max(std::log(p), kLogFloor) : kLogFloor;
}

// Exp-normalize a row of log-scores into probabilities, flooring tiny values.
inline void softmax_row(std::span<const double> logs, std::span<double> out) {
    const double lse = logsumexp(logs);
    for (std::size_t j = 0; j < logs.size(); ++j)
        out[j] = std::max(std::exp(logs[j] - lse), kProbFloor);
}

namespace detail {

inline void validate_class_names(const std::vector<std::string>& names) {
    if (names.size() < 2)
        throw InvalidDistribution("need at least 2 classes, got " + std::to_string(names.size()));
    std::unordered_set<std::string> seen;
    for (const auto& n : names)
        if (!seen.insert(n).second)
            throw InvalidDistribution("duplicate class name: " + n);
}

inline std::vector<std::string> default_class_names(std::size_t k) {
    std::vector<std::string> names;
    names.reserve(k);
    for (std::size_t j = 0; j < k; ++j) names.push_back("class_" + std::to_string(j));
    return names;
}

}  // namespace detail

// N x K raw log-scores (natural log of the per-class model score). Entries
// must be finite; immutable after construction.
class LogScoreMatrix {
public:
    LogScoreMatrix(Matrix values, std::vector<std::string> class_names)
        : values_(std::move(values)), class_names_(std::move(class_names)) {
        detail::validate_class_names(class_names_);
        if (values_.rows() < 1) throw InvalidScores("log-score matrix needs at least one row");
        if (values_.cols() != class_names_.size())
            throw DimensionMismatch("log-score columns do not match class names");
        for (double v : values_.data())
            if (!std::isfinite(v)) throw InvalidScores("non-finite log-score entry");
    }

    std::size_t samples() const { return values_.rows(); }
    std::size_t classes() const { return values_.cols(); }
    const Matrix& values() const { return values_; }
    const std::vector<std::string>& class_names() const { return class_names_; }

private:
    Matrix values_;
    std::vector<std::string> class_names_;
};

// N x K row-stochastic matrix of class posteriors. Rows must sum to 1 within
// 1e-9 and entries lie in [0, 1]. N may be zero (an empty evaluation set).
class PosteriorMatrix {
public:
    static constexpr double kRowSumTolerance = 1e-9;

    PosteriorMatrix(Matrix values, std::vector<std::string> class_names)
        : values_(std::move(values)), class_names_(std::move(class_names)) {
        detail::validate_class_names(class_names_);
        if (values_.cols() != class_names_.size())
            throw DimensionMismatch("posterior columns do not match class names");
        for (std::size_t i = 0; i < values_.rows(); ++i) {
            double sum = 0.0;
            for (double p : values_.row(i)) {
                if (!(p >= 0.0 && p <= 1.0))
                    throw InvalidDistribution("posterior entry outside [0, 1] in row " +
                                              std::to_string(i));
                sum += p;
            }
            if (std::abs(sum - 1.0) > kRowSumTolerance)
                throw InvalidDistribution("posterior row " + std::to_string(i) +
                                          " sums to " + std::to_string(sum));
        }
    }

    std::size_t samples() const { return values_.rows(); }
    std::size_t classes() const { return values_.cols(); }
    const Matrix& values() const { return values_; }
    std::span<const double> row(std::size_t i) const { return values_.row(i); }
    const std::vector<std::string>& class_names() const { return class_names_; }

private:
    Matrix values_;
    std::vector<std::string> class_names_;
};

// Length-K probability vector. Serves both as a model prior (mean posterior
// over queries) and a target prior for adaptation.
class PriorVector {
public:
    static constexpr double kSumTolerance = 1e-9;

    explicit PriorVector(std::vector<double> probs) : probs_(std::move(probs)) {
        if (probs_.size() < 2)
            throw InvalidDistribution("prior needs at least 2 classes");
        double sum = 0.0;
        for (double p : probs_) {
            if (!(p >= 0.0 && p <= 1.0))
                throw InvalidDistribution("prior entry outside [0, 1]");
            sum += p;
        }
        if (std::abs(sum - 1.0) > kSumTolerance)
            throw InvalidDistribution("prior sums to " + std::to_string(sum));
    }

    static PriorVector uniform(std::size_t k) {
        return PriorVector(std::vector<double>(k, 1.0 / static_cast<double>(k)));
    }

    // Rescales nonnegative weights to sum to one. Convenience for priors that
    // are only known up to rounding (e.g. published tables).
    static PriorVector normalized(std::vector<double> weights) {
        double sum = 0.0;
        for (double w : weights) {
            if (!(w >= 0.0) || !std::isfinite(w))
                throw InvalidDistribution("prior weight must be finite and nonnegative");
            sum += w;
        }
        if (sum <= 0.0) throw InvalidDistribution("prior weights sum to zero");
        for (double& w : weights) w /= sum;
        return PriorVector(std::move(weights));
    }

    std::size_t size() const { return probs_.size(); }
    double operator[](std::size_t k) const { return probs_[k]; }
    const std::vector<double>& probs() const { return probs_; }

    friend bool operator==(const PriorVector&, const PriorVector&) = default;

private:
    std::vector<double> probs_;
};

// Length-N vector of class indices, each < class_count.
class LabelVector {
public:
    LabelVector(std::vector<std::size_t> labels, std::size_t class_count)
        : labels_(std::move(labels)), class_count_(class_count) {
        if (class_count_ < 2) throw InvalidLabel("labels need at least 2 classes");
        for (std::size_t y : labels_)
            if (y >= class_count_)
                throw InvalidLabel("label " + std::to_string(y) + " out of range for " +
                                   std::to_string(class_count_) + " classes");
    }

    std::size_t size() const { return labels_.size(); }
    std::size_t class_count() const { return class_count_; }
    std::size_t operator[](std::size_t i) const { return labels_[i]; }
    const std::vector<std::size_t>& labels() const { return labels_; }

    friend bool operator==(const LabelVector&, const LabelVector&) = default;

private:
    std::vector<std::size_t> labels_;
    std::size_t class_count_ = 0;
};

// Per-label token log-probabilities for one sample: label k carries M_k >= 1
// conditional log-probs, each <= 0.
class TokenLogProbSequence {
public:
    explicit TokenLogProbSequence(std::vector<std::vector<double>> per_label)
        : per_label_(std::move(per_label)) {
        for (const auto& tokens : per_label_) {
            if (tokens.empty()) throw EmptyLabel("label with no token log-probs");
            for (double lp : tokens)
                if (!(lp <= 0.0) || !std::isfinite(lp))
                    throw InvalidTokenProb("token log-prob must be finite and <= 0, got " +
                                           std::to_string(lp));
        }
    }

    std::size_t labels() const { return per_label_.size(); }
    const std::vector<double>& tokens(std::size_t k) const { return per_label_[k]; }

private:
    std::vector<std::vector<double>> per_label_;
};

// Normalizes raw per-class scores into posteriors: row i, class k becomes
// exp(s_ik) / sum_k' exp(s_ik'). Shift-invariant per row and argmax-preserving.
inline PosteriorMatrix normalize_scores(const LogScoreMatrix& scores) {
    Matrix out(scores.samples(), scores.classes());
    for (std::size_t i = 0; i < scores.samples(); ++i)
        softmax_row(scores.values().row(i), out.row(i));
    return PosteriorMatrix(std::move(out), scores.class_names());
}

// Log-score of a label spelled with several tokens: the sum of the per-token
// conditional log-probabilities (log of the chained product).
inline double compose_label_score(std::span<const double> token_logprobs) {
    if (token_logprobs.empty()) throw EmptyLabel("cannot compose an empty token sequence");
    double sum = 0.0;
    for (double lp : token_logprobs) {
        if (!(lp <= 0.0) || !std::isfinite(lp))
            throw InvalidTokenProb("token log-prob must be finite and <= 0, got " +
                                   std::to_string(lp));
        sum += lp;
    }
    return sum;
}

inline std::vector<double> compose_label_scores(const TokenLogProbSequence& seq) {
    std::vector<double> out;
    out.reserve(seq.labels());
    for (std::size_t k = 0; k < seq.labels(); ++k)
        out.push_back(compose_label_score(seq.tokens(k)));
    return out;
}

// Row argmax with ties broken toward the lowest class index.
inline std::size_t argmax_row(std::span<const double> row) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < row.size(); ++j)
        if (row[j] > row[best]) best = j;
    return best;
}

inline LabelVector predict(const PosteriorMatrix& posteriors) {
    std::vector<std::size_t> labels;
    labels.reserve(posteriors.samples());
    for (std::size_t i = 0; i < posteriors.samples(); ++i)
        labels.push_back(argmax_row(posteriors.row(i)));
    return LabelVector(std::move(labels), posteriors.classes());
}

// Class frequencies of a label vector with optional additive smoothing:
// (N_k + s) / (N + K*s). With s = 0 every class must appear at least once.
inline PriorVector empirical_prior(const LabelVector& labels, double smoothing = 0.0) {
    if (labels.size() == 0) throw EmptyTrainingSet("no labels to estimate a prior from");
    if (smoothing < 0.0) throw InvalidDistribution("smoothing must be nonnegative");
    const std::size_t k = labels.class_count();
    std::vector<double> counts(k, 0.0);
    for (std::size_t y : labels.labels()) counts[y] += 1.0;
    const double denom = static_cast<double>(labels.size()) + smoothing * static_cast<double>(k);
    std::vector<double> probs(k);
    for (std::size_t j = 0; j < k; ++j) {
        if (counts[j] == 0.0 && smoothing == 0.0)
            throw ZeroClassCount("class " + std::to_string(j) +
                                 " has zero training samples; use smoothing or an explicit prior");
        probs[j] = (counts[j] + smoothing) / denom;
    }
    return PriorVector(std::move(probs));
}

}  // namespace prioradapt
