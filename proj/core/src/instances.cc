// Copyright 2026 The drsub Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "drsub/instances.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "drsub/errors.h"
#include "drsub/rng.h"

namespace drsub {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kNqpLow = -10.0;
constexpr double kDppLogLow = -0.5;
constexpr double kDppLogHigh = 1.0;
constexpr double kMinAbsDet = 1e-300;

void CheckDim(std::size_t expected, const Point& x) {
  if (x.size() != expected) throw DimensionError(expected, x.size());
}

VectorXd AsVector(const Point& x) {
  return Eigen::Map<const VectorXd>(x.values().data(),
                                    static_cast<Eigen::Index>(x.size()));
}

Gradient ToGradient(const VectorXd& v) {
  return Gradient(std::vector<double>(v.data(), v.data() + v.size()));
}

// ---------------------------------------------------------------------------
// DPP helpers

struct DppFactor {
  Eigen::PartialPivLU<MatrixXd> lu;
  double log_det = 0.0;
};

// M(x) = diag(x) A + I with A = L - I.
MatrixXd DppSystem(const MatrixXd& a, const Point& x) {
  MatrixXd m = AsVector(x).asDiagonal() * a;
  m.diagonal().array() += 1.0;
  return m;
}

DppFactor FactorDpp(const MatrixXd& a, const Point& x) {
  DppFactor f{Eigen::PartialPivLU<MatrixXd>(DppSystem(a, x)), 0.0};
  const MatrixXd& lu = f.lu.matrixLU();
  double sign = f.lu.permutationP().determinant();
  double log_abs = 0.0;
  for (Eigen::Index i = 0; i < lu.rows(); ++i) {
    const double u = lu(i, i);
    if (u == 0.0) throw SingularMatrix("DPP system has a zero pivot");
    if (u < 0.0) sign = -sign;
    log_abs += std::log(std::abs(u));
  }
  if (log_abs < std::log(kMinAbsDet)) {
    throw SingularMatrix("DPP system determinant below 1e-300");
  }
  if (sign < 0.0) throw SingularMatrix("DPP system has negative determinant");
  f.log_det = log_abs;
  return f;
}

// ---------------------------------------------------------------------------
// Multilinear helpers

// E[F(R(x))] with x_i overridden by `value` when `coord` is in range.
double Expectation(const std::vector<double>& table, std::span<const double> x,
                   std::size_t coord, double value) {
  std::vector<double> p(table.size());
  p[0] = 1.0;
  std::size_t size = 1;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = (i == coord) ? value : x[i];
    for (std::size_t m = 0; m < size; ++m) {
      p[m + size] = p[m] * xi;
      p[m] *= 1.0 - xi;
    }
    size *= 2;
  }
  double total = 0.0;
  for (std::size_t m = 0; m < table.size(); ++m) total += p[m] * table[m];
  return total;
}

// ---------------------------------------------------------------------------
// Objectives

class NqpObjective : public Objective {
 public:
  explicit NqpObjective(NqpInstance inst)
      : inst_(std::move(inst)), sym_(0.5 * (inst_.H + inst_.H.transpose())) {}
  std::size_t dim() const override { return inst_.h.size(); }
  double Value(const Point& x) const override { return NqpValue(inst_, x); }
  Gradient Grad(const Point& x) const override {
    CheckDim(dim(), x);
    return ToGradient(sym_ * AsVector(x) + inst_.h);
  }

 private:
  NqpInstance inst_;
  MatrixXd sym_;
};

class DppObjective : public Objective {
 public:
  explicit DppObjective(DppInstance inst) : inst_(std::move(inst)) {}
  std::size_t dim() const override { return inst_.eigenvalues.size(); }
  double Value(const Point& x) const override { return DppValue(inst_, x); }
  Gradient Grad(const Point& x) const override { return DppGrad(inst_, x); }

 private:
  DppInstance inst_;
};

class MultilinearObjective : public Objective {
 public:
  explicit MultilinearObjective(CutInstance inst) : inst_(std::move(inst)) {}
  std::size_t dim() const override { return inst_.n; }
  double Value(const Point& x) const override {
    return MultilinearValue(inst_, x);
  }
  Gradient Grad(const Point& x) const override {
    return MultilinearGrad(inst_, x);
  }

 private:
  CutInstance inst_;
};

// ---------------------------------------------------------------------------
// JSON helpers

std::string FormatDouble(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

double ParseDouble(const std::string& s) {
  double v = 0.0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || !std::isfinite(v)) {
    throw ValidationError("bad decimal string in instance payload: '" + s + "'");
  }
  return v;
}

nlohmann::json MatrixPayload(const MatrixXd& m) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      arr.push_back(FormatDouble(m(i, j)));
    }
  }
  return arr;
}

MatrixXd ParseMatrix(const nlohmann::json& arr, std::size_t n) {
  if (!arr.is_array() || arr.size() != n * n) {
    throw ValidationError("matrix payload must hold n*n decimal strings");
  }
  MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto& cell = arr[i * n + j];
      if (!cell.is_string()) throw ValidationError("matrix entries must be strings");
      m(i, j) = ParseDouble(cell.get<std::string>());
    }
  }
  return m;
}

void ValidateDpp(const DppInstance& inst) {
  const Eigen::Index n = inst.L.rows();
  if (inst.L.cols() != n || inst.eigenvalues.size() != n) {
    throw ValidationError("DPP kernel and eigenvalue sizes disagree");
  }
  if ((inst.L - inst.L.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw ValidationError("DPP kernel is not symmetric");
  }
  const double lo = std::exp(kDppLogLow) - 1e-8;
  const double hi = std::exp(kDppLogHigh) + 1e-8;
  VectorXd stored = inst.eigenvalues;
  std::sort(stored.data(), stored.data() + n);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(inst.L, Eigen::EigenvaluesOnly);
  const VectorXd& computed = es.eigenvalues();  // ascending
  for (Eigen::Index i = 0; i < n; ++i) {
    if (stored(i) < lo || stored(i) > hi) {
      throw ValidationError("DPP eigenvalue outside [e^-0.5, e]");
    }
    if (std::abs(stored(i) - computed(i)) > 1e-8) {
      throw ValidationError("DPP kernel spectrum disagrees with stored eigenvalues");
    }
  }
}

}  // namespace

std::string_view FamilyName(Family family) {
  switch (family) {
    case Family::kNqp:
      return "nqp";
    case Family::kDpp:
      return "dpp";
    case Family::kCut:
      return "cut";
  }
  return "unknown";
}

Family ParseFamily(std::string_view name) {
  std::string lower(name);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "nqp") return Family::kNqp;
  if (lower == "dpp") return Family::kDpp;
  if (lower == "cut") return Family::kCut;
  throw ValidationError("unknown family '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// NQP

NqpInstance GenerateNqp(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ValidationError("NQP dimension must be >= 1");
  Rng rng(seed);
  MatrixXd H(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) H(i, j) = rng.Uniform(kNqpLow, 0.0);
  }
  return NqpFromMatrix(std::move(H));
}

NqpInstance NqpFromMatrix(MatrixXd H) {
  if (H.rows() != H.cols() || H.rows() == 0) {
    throw ValidationError("NQP matrix must be square and non-empty");
  }
  if (H.minCoeff() < kNqpLow || H.maxCoeff() > 0.0) {
    throw ValidationError("NQP matrix entries must lie in [-10, 0]");
  }
  const Eigen::Index n = H.rows();
  VectorXd h(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double col = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) col += H(i, j);
    h(j) = -0.2 * col;
  }
  return {std::move(H), std::move(h)};
}

double NqpValue(const NqpInstance& inst, const Point& x) {
  CheckDim(inst.h.size(), x);
  const VectorXd v = AsVector(x);
  return 0.5 * v.dot(inst.H * v) + inst.h.dot(v);
}

Gradient NqpGrad(const NqpInstance& inst, const Point& x) {
  CheckDim(inst.h.size(), x);
  const VectorXd v = AsVector(x);
  return ToGradient(0.5 * (inst.H * v + inst.H.transpose() * v) + inst.h);
}

// ---------------------------------------------------------------------------
// DPP

DppInstance GenerateDpp(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ValidationError("DPP dimension must be >= 1");
  Rng rng(seed);
  VectorXd ell(n);
  for (std::size_t i = 0; i < n; ++i) {
    ell(i) = std::exp(rng.Uniform(kDppLogLow, kDppLogHigh));
  }
  MatrixXd g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.Gaussian();
  }
  // Haar sample: Q from QR with columns flipped so that diag(R) > 0.
  Eigen::HouseholderQR<MatrixXd> qr(g);
  MatrixXd q = qr.householderQ();
  const MatrixXd& r = qr.matrixQR();
  for (std::size_t i = 0; i < n; ++i) {
    if (r(i, i) < 0.0) q.col(i) *= -1.0;
  }
  MatrixXd L = q * ell.asDiagonal() * q.transpose();
  L = 0.5 * (L + L.transpose()).eval();
  return {std::move(L), std::move(ell)};
}

double DppValue(const DppInstance& inst, const Point& x) {
  const Eigen::Index n = inst.L.rows();
  CheckDim(n, x);
  const MatrixXd a = inst.L - MatrixXd::Identity(n, n);
  return FactorDpp(a, x).log_det;
}

Gradient DppGrad(const DppInstance& inst, const Point& x) {
  const Eigen::Index n = inst.L.rows();
  CheckDim(n, x);
  const MatrixXd a = inst.L - MatrixXd::Identity(n, n);
  const DppFactor f = FactorDpp(a, x);
  const MatrixXd inv = f.lu.inverse();
  // (A M^-1)_ii = sum_j A_ij (M^-1)_ji.
  const VectorXd g = (a.array() * inv.transpose().array()).rowwise().sum();
  return ToGradient(g);
}

// ---------------------------------------------------------------------------
// CUT

CutInstance GenerateCut(std::size_t n, std::uint64_t seed) {
  if (n == 0 || n > kMaxCutNodes) {
    throw ValidationError("CUT instances need 1 <= n <= 16");
  }
  Rng rng(seed);
  MatrixXd w = MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) w(i, j) = rng.Uniform();
    }
  }
  return CutFromWeights(std::move(w));
}

CutInstance CutFromWeights(MatrixXd weights) {
  const auto n = static_cast<std::size_t>(weights.rows());
  if (weights.cols() != weights.rows() || n == 0 || n > kMaxCutNodes) {
    throw ValidationError("CUT weights must be square with 1 <= n <= 16");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (weights(i, i) != 0.0) throw ValidationError("CUT weights need a zero diagonal");
  }
  if (weights.minCoeff() < 0.0 || !weights.allFinite()) {
    throw ValidationError("CUT weights must be finite and non-negative");
  }
  CutInstance inst{n, std::move(weights), {}};
  inst.set_values.resize(std::size_t{1} << n);
  for (std::uint32_t mask = 0; mask < inst.set_values.size(); ++mask) {
    inst.set_values[mask] = CutSetValue(inst, mask);
  }
  return inst;
}

double CutSetValue(const CutInstance& inst, std::uint32_t mask) {
  double total = 0.0;
  for (std::size_t i = 0; i < inst.n; ++i) {
    if (!(mask >> i & 1U)) continue;
    for (std::size_t j = 0; j < inst.n; ++j) {
      if (!(mask >> j & 1U)) total += inst.weights(i, j);
    }
  }
  return total;
}

double MultilinearValue(const CutInstance& inst, const Point& x) {
  CheckDim(inst.n, x);
  return Expectation(inst.set_values, x.values(), inst.n, 0.0);
}

Gradient MultilinearGrad(const CutInstance& inst, const Point& x) {
  CheckDim(inst.n, x);
  std::vector<double> g(inst.n);
  for (std::size_t i = 0; i < inst.n; ++i) {
    g[i] = Expectation(inst.set_values, x.values(), i, 1.0) -
           Expectation(inst.set_values, x.values(), i, 0.0);
  }
  return Gradient(std::move(g));
}

// ---------------------------------------------------------------------------
// Uniform access

Instance GenerateInstance(const InstanceSpec& spec) {
  switch (spec.family) {
    case Family::kNqp:
      return {spec, GenerateNqp(spec.n, spec.seed)};
    case Family::kDpp:
      return {spec, GenerateDpp(spec.n, spec.seed)};
    case Family::kCut:
      return {spec, GenerateCut(spec.n, spec.seed)};
  }
  throw ValidationError("unknown family");
}

std::shared_ptr<const Objective> MakeObjective(const NqpInstance& inst) {
  return std::make_shared<NqpObjective>(inst);
}
std::shared_ptr<const Objective> MakeObjective(const DppInstance& inst) {
  return std::make_shared<DppObjective>(inst);
}
std::shared_ptr<const Objective> MakeObjective(const CutInstance& inst) {
  return std::make_shared<MultilinearObjective>(inst);
}
std::shared_ptr<const Objective> MakeObjective(const Instance& inst) {
  return std::visit([](const auto& d) { return MakeObjective(d); }, inst.data);
}

std::string InstanceToJson(const Instance& inst) {
  nlohmann::json doc;
  doc["family"] = std::string(FamilyName(inst.spec.family));
  doc["n"] = inst.spec.n;
  doc["seed"] = inst.spec.seed;
  if (const auto* nqp = std::get_if<NqpInstance>(&inst.data)) {
    doc["matrix"] = MatrixPayload(nqp->H);
  } else if (const auto* dpp = std::get_if<DppInstance>(&inst.data)) {
    doc["matrix"] = MatrixPayload(dpp->L);
    nlohmann::json ev = nlohmann::json::array();
    for (Eigen::Index i = 0; i < dpp->eigenvalues.size(); ++i) {
      ev.push_back(FormatDouble(dpp->eigenvalues(i)));
    }
    doc["eigenvalues"] = ev;
  } else {
    doc["matrix"] = MatrixPayload(std::get<CutInstance>(inst.data).weights);
  }
  return doc.dump(2);
}

Instance InstanceFromJson(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("instance JSON: ") + e.what());
  }
  try {
    InstanceSpec spec;
    spec.family = ParseFamily(doc.at("family").get<std::string>());
    spec.n = doc.at("n").get<std::size_t>();
    spec.seed = doc.at("seed").get<std::uint64_t>();
    if (spec.n == 0) throw ValidationError("instance dimension must be >= 1");
    MatrixXd m = ParseMatrix(doc.at("matrix"), spec.n);
    switch (spec.family) {
      case Family::kNqp:
        return {spec, NqpFromMatrix(std::move(m))};
      case Family::kDpp: {
        const auto& ev = doc.at("eigenvalues");
        if (!ev.is_array() || ev.size() != spec.n) {
          throw ValidationError("DPP eigenvalues must hold n decimal strings");
        }
        VectorXd ell(spec.n);
        for (std::size_t i = 0; i < spec.n; ++i) {
          ell(i) = ParseDouble(ev[i].get<std::string>());
        }
        DppInstance dpp{std::move(m), std::move(ell)};
        ValidateDpp(dpp);
        return {spec, std::move(dpp)};
      }
      case Family::kCut:
        return {spec, CutFromWeights(std::move(m))};
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("instance JSON: ") + e.what());
  }
  throw ValidationError("unknown family");
}

}  // namespace drsub
