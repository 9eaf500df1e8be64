#include "oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

namespace oracle {

Eigen::MatrixXd to_eigen(const fusionopt::Matrix& a) {
  Eigen::MatrixXd out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
  return out;
}

Eigen::VectorXd to_eigen(const fusionopt::Vector& v) {
  Eigen::VectorXd out(v.dim());
  for (std::size_t k = 0; k < v.dim(); ++k) out(k) = v[k];
  return out;
}

fusionopt::Matrix from_eigen(const Eigen::MatrixXd& a) {
  fusionopt::Matrix out(a.rows(), a.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
  return out;
}

fusionopt::Vector from_eigen_vector(const Eigen::VectorXd& v) {
  fusionopt::Vector out(v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) out[k] = v(k);
  return out;
}

Eigen::MatrixXd projector_onto(const Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  if (a.cols() == 0) return Eigen::MatrixXd::Zero(n, n);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  const double cut = 1e-10 * std::max(1.0, s.size() ? s(0) : 0.0);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) > cut) p += svd.matrixU().col(k) * svd.matrixU().col(k).transpose();
  }
  return p;
}

Eigen::MatrixXd projector(const fusionopt::Subspace& s) {
  if (s.dim() == 0) return Eigen::MatrixXd::Zero(s.ambient_dim(), s.ambient_dim());
  return projector_onto(to_eigen(s.basis()));
}

std::size_t rank(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& s = svd.singularValues();
  const double cut = 1e-10 * std::max(1.0, s(0));
  return static_cast<std::size_t>((s.array() > cut).count());
}

double opnorm(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Eigen::MatrixXd>(a).singularValues()(0);
}

double opnorm(const fusionopt::Matrix& a) { return opnorm(to_eigen(a)); }

Eigen::MatrixXd frame_operator(const fusionopt::FusionFrame& w) {
  const auto n = static_cast<Eigen::Index>(w.ambient_dim());
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  for (const auto& m : w.members()) s += m.weight * m.weight * oracle::projector(m.subspace);
  return s;
}

std::vector<Eigen::MatrixXd> components(const fusionopt::FusionFrame& w, const fusionopt::FusionFrame& v) {
  const Eigen::MatrixXd s = oracle::frame_operator(w);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(s);
  std::vector<Eigen::MatrixXd> out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Eigen::MatrixXd pw = oracle::projector(w.subspace(i));
    out.push_back(w.weight(i) * v.weight(i) * oracle::projector(v.subspace(i)) * lu.solve(pw));
  }
  return out;
}

Worst worst_case(const std::vector<Eigen::MatrixXd>& comps, std::size_t r, bool frobenius) {
  const std::size_t m = comps.size();
  struct Entry {
    std::vector<std::size_t> subset;
    double value;
  };
  std::vector<Entry> all;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != r) continue;
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(comps[0].rows(), comps[0].cols());
    std::vector<std::size_t> subset;
    for (std::size_t k = 0; k < m; ++k) {
      if (mask & (1u << k)) {
        sum += comps[k];
        subset.push_back(k);
      }
    }
    all.push_back({subset, frobenius ? sum.norm() : opnorm(sum)});
  }
  Worst out;
  for (const auto& e : all) out.value = std::max(out.value, e.value);
  for (const auto& e : all) {
    if (e.value >= out.value - 1e-12 * out.value) out.argmax.push_back(e.subset);
  }
  std::sort(out.argmax.begin(), out.argmax.end());
  return out;
}

}  // namespace oracle
