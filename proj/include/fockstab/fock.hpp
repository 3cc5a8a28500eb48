#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace fockstab {

using Complex = std::complex<double>;

/// Physical constants of the dispersive probe plus the basis truncation.
/// The measurement operators are diagonal in the number basis with entries
/// cos(theta + n*phi) and sin(theta + n*phi); n_bar is the target photon
/// number and n_max the highest retained Fock level.
struct ModelParams {
  double theta = 0.25;
  double phi = 0.61;
  int n_bar = 2;
  int n_max = 40;

  int dim() const { return n_max + 1; }

  /// phi_n = theta + n*phi, the measurement angle of level n.
  double level_angle(int n) const { return theta + n * phi; }

  void validate() const {
    if (n_bar < 2)
      throw std::invalid_argument("ModelParams: weight table requires n_bar >= 2");
    if (n_bar + 2 > n_max)
      throw std::invalid_argument("ModelParams: need n_bar + 2 <= n_max");
    if (phi == 0.0)
      throw std::invalid_argument("ModelParams: phi must be nonzero");
  }
};

/// Pure cavity state in the truncated number basis; amplitudes[n] = <n|psi>.
/// Unit norm is maintained by every public operation that returns a state.
struct StateVector {
  std::vector<Complex> amplitudes;

  StateVector() = default;
  explicit StateVector(int dim) : amplitudes(dim, Complex{0.0, 0.0}) {}

  int dim() const { return static_cast<int>(amplitudes.size()); }

  double norm_sq() const {
    double s = 0.0;
    for (const Complex& c : amplitudes) s += std::norm(c);
    return s;
  }
  double norm() const { return std::sqrt(norm_sq()); }

  /// |<n|psi>|^2
  double population(int n) const { return std::norm(amplitudes[n]); }

  /// Largest level population; argmax returned through `level` when non-null.
  double max_population(int* level = nullptr) const {
    double best = -1.0;
    int arg = 0;
    for (int n = 0; n < dim(); ++n) {
      const double p = population(n);
      if (p > best) {
        best = p;
        arg = n;
      }
    }
    if (level) *level = arg;
    return best;
  }

  /// Divides by the current norm; returns the pre-normalization norm.
  double renormalize() {
    const double nrm = norm();
    if (nrm <= 0.0)
      throw std::domain_error("StateVector: cannot normalize the zero vector");
    for (Complex& c : amplitudes) c /= nrm;
    return nrm;
  }
};

/// One-hot basis state |n>.
inline StateVector fock_state(int n, const ModelParams& params) {
  if (n < 0 || n > params.n_max)
    throw std::out_of_range("fock_state: level outside the truncated basis");
  StateVector psi(params.dim());
  psi.amplitudes[n] = Complex{1.0, 0.0};
  return psi;
}

/// Truncated coherent state with real amplitude, c_n proportional to
/// alpha^n / sqrt(n!), renormalized on the truncated basis. Errors out when
/// the Poisson tail beyond n_max exceeds 1e-9.
inline StateVector coherent_state(double alpha, const ModelParams& params) {
  const double mean = alpha * alpha;
  double pmf = std::exp(-mean);
  double cdf = pmf;
  for (int n = 1; n <= params.n_max; ++n) {
    pmf *= mean / n;
    cdf += pmf;
  }
  const double tail = 1.0 - cdf;
  if (!(tail < 1e-9))
    throw std::domain_error(
        "coherent_state: truncation tail " + std::to_string(tail) +
        " exceeds 1e-9; raise n_max or reduce alpha");

  StateVector psi(params.dim());
  double c = 1.0;
  psi.amplitudes[0] = c;
  for (int n = 1; n <= params.n_max; ++n) {
    c *= alpha / std::sqrt(static_cast<double>(n));
    psi.amplitudes[n] = c;
  }
  psi.renormalize();
  return psi;
}

enum class Ladder { annihilation, creation };

struct LadderResult {
  StateVector state;  // exact truncated action, NOT renormalized
  double leakage;     // squared magnitude pushed past n_max (creation only)
};

/// a|n> = sqrt(n)|n-1>, adag|n> = sqrt(n+1)|n+1> on the truncated basis.
/// Amplitude raised past n_max is dropped and reported as leakage.
inline LadderResult apply_ladder(const StateVector& psi, Ladder which) {
  const int d = psi.dim();
  LadderResult out{StateVector(d), 0.0};
  if (which == Ladder::annihilation) {
    for (int n = 1; n < d; ++n)
      out.state.amplitudes[n - 1] =
          std::sqrt(static_cast<double>(n)) * psi.amplitudes[n];
  } else {
    for (int n = 0; n + 1 < d; ++n)
      out.state.amplitudes[n + 1] =
          std::sqrt(static_cast<double>(n + 1)) * psi.amplitudes[n];
    out.leakage = static_cast<double>(d) * std::norm(psi.amplitudes[d - 1]);
  }
  return out;
}

struct MeasurementValues {
  std::vector<double> g;  // cos(theta + n*phi)
  std::vector<double> e;  // sin(theta + n*phi)
};

inline MeasurementValues measurement_values(const ModelParams& params) {
  MeasurementValues mv;
  mv.g.resize(params.dim());
  mv.e.resize(params.dim());
  for (int n = 0; n <= params.n_max; ++n) {
    const double angle = params.level_angle(n);
    mv.g[n] = std::cos(angle);
    mv.e[n] = std::sin(angle);
  }
  return mv;
}

enum class Outcome : char { g = 'g', e = 'e' };

inline char to_char(Outcome s) { return static_cast<char>(s); }

struct CollapseResult {
  StateVector state;   // M_s psi / ||M_s psi||
  double probability;  // ||M_s psi||^2
};

/// ||M_s psi||^2 for one branch, from precomputed measurement values.
inline double branch_probability(const StateVector& psi, Outcome s,
                                 const MeasurementValues& mv) {
  const std::vector<double>& vals = (s == Outcome::g) ? mv.g : mv.e;
  double p = 0.0;
  for (int n = 0; n < psi.dim(); ++n) p += vals[n] * vals[n] * psi.population(n);
  return p;
}

inline CollapseResult collapse(const StateVector& psi, Outcome s,
                               const MeasurementValues& mv) {
  const std::vector<double>& vals = (s == Outcome::g) ? mv.g : mv.e;
  const double p = branch_probability(psi, s, mv);
  if (!(p > 0.0))
    throw std::domain_error("collapse: zero-probability measurement branch");
  CollapseResult out{StateVector(psi.dim()), p};
  const double inv = 1.0 / std::sqrt(p);
  for (int n = 0; n < psi.dim(); ++n)
    out.state.amplitudes[n] = psi.amplitudes[n] * vals[n] * inv;
  return out;
}

/// Projective measurement step: returns M_s psi / ||M_s psi|| and
/// P_s = ||M_s psi||^2. Requesting a zero-probability branch is an error;
/// the trajectory sampler never selects one.
inline CollapseResult collapse(const StateVector& psi, Outcome s,
                               const ModelParams& params) {
  return collapse(psi, s, measurement_values(params));
}

/// Non-degeneracy scan of the measurement spectrum at the truncation:
/// the cos^2 values of all levels 0..n_max must be pairwise separated by
/// more than `tol`, otherwise distinct levels are indistinguishable to the
/// measurement and the collapse cannot resolve them.
struct NondegeneracyReport {
  bool pass = true;
  double min_gap = 0.0;
  int level_a = -1;  // first colliding pair (lexicographic), if any
  int level_b = -1;

  std::string describe() const {
    if (pass) return "measurement spectrum non-degenerate (min gap " +
                     std::to_string(min_gap) + ")";
    return "degenerate measurement spectrum: levels " + std::to_string(level_a) +
           " and " + std::to_string(level_b) + " collide (gap " +
           std::to_string(min_gap) + ")";
  }
};

inline NondegeneracyReport check_A1(const ModelParams& params, double tol) {
  std::vector<double> v(params.dim());
  for (int n = 0; n <= params.n_max; ++n) {
    const double c = std::cos(params.level_angle(n));
    v[n] = c * c;
  }
  NondegeneracyReport report;
  report.min_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= params.n_max; ++i) {
    for (int j = i + 1; j <= params.n_max; ++j) {
      const double gap = std::abs(v[i] - v[j]);
      if (gap < report.min_gap) report.min_gap = gap;
      if (gap <= tol && report.pass) {
        report.pass = false;
        report.level_a = i;
        report.level_b = j;
      }
    }
  }
  return report;
}

}  // namespace fockstab
