#include "ncycle/rmt.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace ncycle::rmt {

void SimConfig::validate() const {
  if (matrix_size < 2) throw InvalidArgument("matrix size must be at least 2");
  if (gens < 1) throw InvalidArgument("number of generators must be at least 1");
  if (trials < 2) throw InvalidArgument("need at least 2 trials");
  if (max_power < 1) throw InvalidArgument("max power must be at least 1");
  if (z_threshold <= 0) throw InvalidArgument("z threshold must be positive");
}

std::mt19937_64 trial_stream(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial),
                    static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

Eigen::MatrixXcd haar_unitary(int m, std::mt19937_64& rng) {
  if (m < 1) throw InvalidArgument("unitary size must be at least 1");
  std::normal_distribution<double> normal(0.0, M_SQRT1_2);
  while (true) {
    Eigen::MatrixXcd z(m, m);
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < m; ++i) z(i, j) = {normal(rng), normal(rng)};

    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    const auto& r = qr.matrixQR();
    bool degenerate = false;
    for (int j = 0; j < m; ++j) {
      const double mag = std::abs(r(j, j));
      if (mag < 1e-300) {
        degenerate = true;
        break;
      }
      q.col(j) *= r(j, j) / mag;
    }
    if (!degenerate) return q;
  }
}

Eigen::VectorXd power_traces(const Eigen::MatrixXcd& x, int max_power) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(x, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  Eigen::VectorXd out(max_power + 1);
  Eigen::VectorXd pw = Eigen::VectorXd::Ones(lambda.size());
  out(0) = static_cast<double>(lambda.size());
  for (int p = 1; p <= max_power; ++p) {
    pw = pw.cwiseProduct(lambda);
    out(p) = pw.sum();
  }
  return out;
}

namespace {

struct TrialResult {
  Eigen::VectorXd traces;
  double unitarity_error = 0.0;
  double hermiticity_error = 0.0;
};

TrialResult run_trial(const SimConfig& cfg, int trial) {
  auto rng = trial_stream(cfg.seed, static_cast<std::uint64_t>(trial));
  const int m = cfg.matrix_size;
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(m, m);
  TrialResult out;
  for (int g = 0; g < cfg.gens; ++g) {
    Eigen::MatrixXcd u = haar_unitary(m, rng);
    const Eigen::MatrixXcd gram = u.adjoint() * u;
    out.unitarity_error = std::max(
        out.unitarity_error,
        (gram - Eigen::MatrixXcd::Identity(m, m)).cwiseAbs().maxCoeff());
    x += u + u.adjoint();
  }
  out.hermiticity_error = (x - x.adjoint()).cwiseAbs().maxCoeff();
  out.traces = power_traces(x, cfg.max_power);
  return out;
}

}  // namespace

TraceSamples sample_traces(const SimConfig& config) {
  config.validate();
  TraceSamples out;
  out.config = config;
  out.traces.resize(config.trials, config.max_power + 1);
  std::vector<TrialResult> results(static_cast<std::size_t>(config.trials));

  const unsigned threads = std::clamp<unsigned>(
      config.threads, 1, static_cast<unsigned>(config.trials));
  auto work = [&](unsigned t) {
    for (int i = static_cast<int>(t); i < config.trials;
         i += static_cast<int>(threads)) {
      results[static_cast<std::size_t>(i)] = run_trial(config, i);
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }

  for (int i = 0; i < config.trials; ++i) {
    const auto& r = results[static_cast<std::size_t>(i)];
    out.traces.row(i) = r.traces.transpose();
    out.max_unitarity_error = std::max(out.max_unitarity_error, r.unitarity_error);
    out.max_hermiticity_error =
        std::max(out.max_hermiticity_error, r.hermiticity_error);
  }
  return out;
}

Eigen::VectorXd TraceSamples::polynomial_traces(const IntPolynomial& f) const {
  if (f.degree() > max_power()) {
    throw InvalidArgument("polynomial degree " + std::to_string(f.degree()) +
                          " exceeds recorded max power " +
                          std::to_string(max_power()));
  }
  Eigen::VectorXd out = Eigen::VectorXd::Zero(trials());
  for (int d = 0; d <= f.degree(); ++d) {
    const double c = f.coefficient(d).convert_to<double>();
    if (c != 0.0) out += c * traces.col(d);
  }
  return out;
}

std::string TraceSamples::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "# seed=" << config.seed << "\ntrial";
  for (int p = 1; p <= max_power(); ++p) os << ",tr_x" << p;
  os << '\n';
  for (int t = 0; t < trials(); ++t) {
    os << t;
    for (int p = 1; p <= max_power(); ++p) os << ',' << traces(t, p);
    os << '\n';
  }
  return os.str();
}

double Estimate::z(double target) const {
  const double diff = value - target;
  if (std_error == 0.0) {
    return diff == 0.0 ? 0.0 : std::copysign(INFINITY, diff);
  }
  return diff / std_error;
}

Estimate estimate_phi(const TraceSamples& samples, int p) {
  if (p < 0 || p > samples.max_power()) {
    throw InvalidArgument("power " + std::to_string(p) + " was not recorded");
  }
  const double m = samples.config.matrix_size;
  const Eigen::VectorXd v = samples.traces.col(p) / m;
  const double mean = v.mean();
  const double var = (v.array() - mean).square().sum() / (v.size() - 1);
  return {mean, std::sqrt(var / static_cast<double>(v.size()))};
}

bool phi_consistent(const Estimate& e, double target, const SimConfig& config) {
  const double m = config.matrix_size;
  return std::abs(e.value - target) <=
         3.0 * e.std_error + config.bias_allowance / (m * m);
}

Estimate fluctuation_covariance(const TraceSamples& samples,
                                const IntPolynomial& f, const IntPolynomial& g) {
  Eigen::VectorXd a = samples.polynomial_traces(f);
  Eigen::VectorXd b = samples.polynomial_traces(g);
  const auto n = static_cast<double>(a.size());
  a.array() -= a.mean();
  b.array() -= b.mean();

  const double sa = a.sum();
  const double sb = b.sum();
  const double sab = a.dot(b);
  const double cov = (sab - sa * sb / n) / (n - 1);

  // Leave-one-out replicates from the running sums.
  Eigen::VectorXd loo(a.size());
  const double n1 = n - 1;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double ra = sa - a(i);
    const double rb = sb - b(i);
    loo(i) = (sab - a(i) * b(i) - ra * rb / n1) / (n1 - 1);
  }
  const double mean = loo.mean();
  const double se = std::sqrt((n - 1) / n * (loo.array() - mean).square().sum());
  return {cov, se};
}

// ---------------------------------------------------------------------------

namespace {

double max_offdiag_abs(const Eigen::MatrixXd& z) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < z.rows(); ++i)
    for (Eigen::Index j = 0; j < z.cols(); ++j)
      if (i != j) best = std::max(best, std::abs(z(i, j)));
  return best;
}

nlohmann::json matrix_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

void fill(const TraceSamples& s, const std::vector<IntPolynomial>& basis,
          Eigen::MatrixXd& cov, Eigen::MatrixXd& se, Eigen::MatrixXd& z) {
  const auto k = static_cast<Eigen::Index>(basis.size());
  cov.resize(k, k);
  se.resize(k, k);
  z.resize(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i; j < k; ++j) {
      Estimate e = fluctuation_covariance(s, basis[static_cast<std::size_t>(i)],
                                          basis[static_cast<std::size_t>(j)]);
      cov(i, j) = cov(j, i) = e.value;
      se(i, j) = se(j, i) = e.std_error;
      z(i, j) = z(j, i) = e.z();
    }
  }
}

}  // namespace

double DiagonalizationReport::p_max_offdiag_z() const {
  return max_offdiag_abs(p_z);
}

double DiagonalizationReport::mono_max_offdiag_z() const {
  return max_offdiag_abs(mono_z);
}

bool DiagonalizationReport::diagonal_positive() const {
  return (p_cov.diagonal().array() > 0).all() &&
         (mono_cov.diagonal().array() > 0).all();
}

std::string DiagonalizationReport::to_json() const {
  nlohmann::json j;
  j["k_max"] = k_max;
  j["z_threshold"] = z_threshold;
  j["basis"] = nlohmann::json::array();
  for (const auto& p : basis) j["basis"].push_back(p.to_string());
  j["p_basis"] = {{"cov", matrix_json(p_cov)},
                  {"se", matrix_json(p_se)},
                  {"z", matrix_json(p_z)},
                  {"max_offdiag_z", p_max_offdiag_z()},
                  {"diagonal", p_diagonal()}};
  j["monomial_basis"] = {{"cov", matrix_json(mono_cov)},
                         {"se", matrix_json(mono_se)},
                         {"z", matrix_json(mono_z)},
                         {"max_offdiag_z", mono_max_offdiag_z()}};
  return j.dump();
}

std::string DiagonalizationReport::to_csv() const {
  std::ostringstream os;
  os.precision(10);
  os << "basis,k,l,cov,se,z\n";
  for (int i = 0; i < k_max; ++i)
    for (int j = 0; j < k_max; ++j)
      os << "P," << i + 1 << ',' << j + 1 << ',' << p_cov(i, j) << ','
         << p_se(i, j) << ',' << p_z(i, j) << '\n';
  for (int i = 0; i < k_max; ++i)
    for (int j = 0; j < k_max; ++j)
      os << "monomial," << i + 1 << ',' << j + 1 << ',' << mono_cov(i, j) << ','
         << mono_se(i, j) << ',' << mono_z(i, j) << '\n';
  return os.str();
}

DiagonalizationReport diagonalization_report(const TraceSamples& samples,
                                             int k_max) {
  if (k_max < 1 || k_max > samples.max_power()) {
    throw InvalidArgument("k_max must lie in [1, max_power]");
  }
  DiagonalizationReport r;
  r.k_max = k_max;
  r.z_threshold = samples.config.z_threshold;
  std::vector<IntPolynomial> monomials;
  for (int k = 1; k <= k_max; ++k) {
    r.basis.push_back(P_from_triangle(k, samples.config.gens));
    monomials.push_back(IntPolynomial::monomial(k));
  }
  fill(samples, r.basis, r.p_cov, r.p_se, r.p_z);
  fill(samples, monomials, r.mono_cov, r.mono_se, r.mono_z);
  return r;
}

DiagonalizationReport diagonalization_report(const SimConfig& config, int k_max) {
  SimConfig cfg = config;
  cfg.max_power = std::max(cfg.max_power, k_max);
  return diagonalization_report(sample_traces(cfg), k_max);
}

}  // namespace ncycle::rmt
