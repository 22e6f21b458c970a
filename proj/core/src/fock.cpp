#include "magnomech/fock.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>

#include "magnomech/errors.hpp"
#include "magnomech/symplectic.hpp"

namespace magnomech {

namespace {

using SparseOp = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;
using DenseOp = Eigen::MatrixXcd;

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::phonon: return "phonon";
    case Mode::magnon: return "magnon";
    case Mode::photon: return "photon";
  }
  return "?";
}

/// Tensor-product number basis; the first listed mode is the most significant digit.
class FockBasis {
 public:
  explicit FockBasis(const TruncationSpec& t) : spec_(t) {
    const std::size_t k = t.modes.size();
    strides_.assign(k, 1);
    for (std::size_t i = k; i-- > 1;) {
      strides_[i - 1] = strides_[i] * static_cast<std::size_t>(t.modes[i].n_max + 1);
    }
    dim_ = t.dimension();
  }

  std::size_t dim() const { return dim_; }

  std::optional<std::size_t> slot(Mode m) const {
    for (std::size_t i = 0; i < spec_.modes.size(); ++i) {
      if (spec_.modes[i].mode == m) return i;
    }
    return std::nullopt;
  }

  int digit(std::size_t index, std::size_t slot) const {
    return static_cast<int>((index / strides_[slot]) % static_cast<std::size_t>(spec_.modes[slot].n_max + 1));
  }

  SparseOp lowering(std::size_t slot) const {
    std::vector<Eigen::Triplet<Complex>> trip;
    trip.reserve(dim_);
    for (std::size_t idx = 0; idx < dim_; ++idx) {
      const int n = digit(idx, slot);
      if (n > 0) {
        trip.emplace_back(static_cast<int>(idx - strides_[slot]), static_cast<int>(idx),
                          Complex{std::sqrt(static_cast<double>(n)), 0.0});
      }
    }
    SparseOp op(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
    op.setFromTriplets(trip.begin(), trip.end());
    return op;
  }

  std::size_t initial_index() const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < spec_.modes.size(); ++i) {
      idx += strides_[i] * static_cast<std::size_t>(spec_.modes[i].initial_number);
    }
    return idx;
  }

 private:
  TruncationSpec spec_;
  std::vector<std::size_t> strides_;
  std::size_t dim_ = 0;
};

struct Dissipator {
  double rate;
  SparseOp op;
  SparseOp op_adj;
};

class LindbladSystem {
 public:
  LindbladSystem(const HamiltonianSpec& h, const PhysicalParams& p, const TruncationSpec& t)
      : basis_(t), modes_() {
    for (const auto& mc : t.modes) modes_.push_back(mc.mode);
    const auto n = static_cast<Eigen::Index>(basis_.dim());
    for (std::size_t s = 0; s < t.modes.size(); ++s) lowering_.push_back(basis_.lowering(s));

    const SparseOp* b = op(Mode::phonon);
    const SparseOp* m = op(Mode::magnon);
    const SparseOp* c = op(Mode::photon);

    SparseOp ham(n, n);
    const auto number = [](const SparseOp& a) -> SparseOp { return SparseOp(a.adjoint()) * a; };
    const auto position = [](const SparseOp& a) -> SparseOp { return SparseOp(a.adjoint()) + a; };

    if (const auto* lin = std::get_if<LinearizedHamiltonian>(&h)) {
      const WorkingPoint& wp = lin->wp;
      if (b) {
        const SparseOp bd = b->adjoint();
        ham += wp.omega_b_prime * number(*b);
        ham += wp.chi * (SparseOp(bd * bd) + SparseOp(*b * *b));
      }
      if (m) ham += wp.delta_m_prime * number(*m);
      if (c) ham += wp.delta_c_prime * number(*c);
      if (b && c) {
        const SparseOp field = std::conj(wp.g_cap_bc) * *c + wp.g_cap_bc * SparseOp(c->adjoint());
        ham += SparseOp(field * position(*b));
      }
      if (b && m) {
        const SparseOp field = std::conj(wp.g_cap_bm) * *m + wp.g_cap_bm * SparseOp(m->adjoint());
        ham += SparseOp(field * position(*b));
      }
    } else {
      if (b) ham += p.omega_b * number(*b);
      if (m) {
        ham += p.delta_m * number(*m);
        ham += p.omega_cap_m * SparseOp(m->adjoint()) + std::conj(p.omega_cap_m) * *m;
      }
      if (c) {
        ham += p.delta_c * number(*c);
        ham += p.omega_cap_c * SparseOp(c->adjoint()) + std::conj(p.omega_cap_c) * *c;
      }
      if (b && c) ham += p.g_bc * SparseOp(number(*c) * position(*b));
      if (b && m) {
        const SparseOp x = position(*b);
        ham += p.g_bm * SparseOp(number(*m) * SparseOp(x * x));
      }
    }

    if (c) add_dissipator(p.gamma_c, *c);
    if (m) add_dissipator(p.gamma_m, *m);
    if (b) {
      add_dissipator(p.gamma_b * (1.0 + p.nbar0), *b);
      if (p.nbar0 > 0.0) add_dissipator(p.gamma_b * p.nbar0, SparseOp(b->adjoint()));
    }

    const Complex i{0.0, 1.0};
    SparseOp k = -i * ham;
    for (const auto& d : dissipators_) k -= d.rate * SparseOp(d.op_adj * d.op);
    k.makeCompressed();
    generator_ = k;
  }

  std::size_t dim() const { return basis_.dim(); }
  const std::vector<Mode>& modes() const { return modes_; }

  DenseOp initial_state() const {
    const auto n = static_cast<Eigen::Index>(dim());
    DenseOp rho = DenseOp::Zero(n, n);
    const auto idx = static_cast<Eigen::Index>(basis_.initial_index());
    rho(idx, idx) = 1.0;
    return rho;
  }

  // Right products use rho X^dag = (X rho^dag)^dag: sparse * dense is far
  // faster in Eigen than dense * sparse.
  void rhs(const DenseOp& rho, DenseOp& drho) const {
    rho_adj_ = rho.adjoint();
    drho.noalias() = generator_ * rho;
    scratch_.noalias() = generator_ * rho_adj_;
    drho += scratch_.adjoint();
    for (const auto& d : dissipators_) {
      scratch_.noalias() = d.op * rho_adj_;
      right_ = scratch_.adjoint();
      drho.noalias() += (2.0 * d.rate) * (d.op * right_);
    }
  }

  MomentSet moments(const DenseOp& rho) const {
    const auto k = static_cast<Eigen::Index>(modes_.size());
    MomentSet ms;
    ms.modes = modes_;
    ms.mean.resize(k);
    ms.normal.resize(k, k);
    ms.anomalous.resize(k, k);
    for (Eigen::Index a = 0; a < k; ++a) {
      const SparseOp& oa = lowering_[static_cast<std::size_t>(a)];
      ms.mean(a) = expectation(oa, rho);
      const SparseOp oa_adj = oa.adjoint();
      for (Eigen::Index b = 0; b < k; ++b) {
        const SparseOp& ob = lowering_[static_cast<std::size_t>(b)];
        ms.normal(a, b) = expectation(SparseOp(oa_adj * ob), rho);
        ms.anomalous(a, b) = expectation(SparseOp(oa * ob), rho);
      }
    }
    return ms;
  }

 private:
  const SparseOp* op(Mode m) const {
    const auto s = basis_.slot(m);
    return s ? &lowering_[*s] : nullptr;
  }

  void add_dissipator(double rate, const SparseOp& l) {
    if (rate <= 0.0) return;
    dissipators_.push_back({rate, l, SparseOp(l.adjoint())});
  }

  static Complex expectation(const SparseOp& a, const DenseOp& rho) {
    Complex acc{0.0, 0.0};
    for (Eigen::Index col = 0; col < a.outerSize(); ++col) {
      for (SparseOp::InnerIterator it(a, col); it; ++it) {
        acc += it.value() * rho(it.col(), it.row());
      }
    }
    return acc;
  }

  FockBasis basis_;
  std::vector<Mode> modes_;
  std::vector<SparseOp> lowering_;
  std::vector<Dissipator> dissipators_;
  SparseOp generator_;
  mutable DenseOp scratch_;
  mutable DenseOp rho_adj_;
  mutable DenseOp right_;
};

double min_eigenvalue(const DenseOp& rho) {
  const DenseOp herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<DenseOp> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

struct RunDiagnostics {
  double max_trace_error = 0.0;
  double max_hermiticity_error = 0.0;
  double min_eigenvalue = 1.0;
  DopriStats stats;
};

/// Advances rho from t0 to t1 while enforcing the trace/Hermiticity tolerances.
DenseOp advance(const LindbladSystem& sys, DenseOp rho, double t0, double t1,
                const LindbladOptions& opt, RunDiagnostics& diag) {
  if (t1 <= t0) return rho;
  const int checkpoints = std::max(0, opt.positivity_checkpoints);
  double next_check = checkpoints > 0 ? t0 + (t1 - t0) / (checkpoints + 1) : t1 * 2 + 1;
  const double check_step = (t1 - t0) / (checkpoints + 1);

  auto rhs = [&sys](double, const DenseOp& r, DenseOp& dr) { sys.rhs(r, dr); };
  auto on_accept = [&](double t, DenseOp& r) {
    const double trace_err = std::abs(r.trace() - Complex{1.0, 0.0});
    const double herm_err = (r - r.adjoint()).cwiseAbs().maxCoeff();
    diag.max_trace_error = std::max(diag.max_trace_error, trace_err);
    diag.max_hermiticity_error = std::max(diag.max_hermiticity_error, herm_err);
    if (trace_err > kTraceTolerance) {
      std::ostringstream os;
      os << "trace drift " << trace_err << " at t = " << t;
      throw TraceDriftError(os.str());
    }
    if (herm_err > kHermiticityTolerance) {
      std::ostringstream os;
      os << "Hermiticity drift " << herm_err << " at t = " << t;
      throw TraceDriftError(os.str());
    }
    // keep rounding from accumulating; herm_err above is the drift of one step
    r = (0.5 * (r + r.adjoint())).eval();
    if (t >= next_check && t < t1) {
      diag.min_eigenvalue = std::min(diag.min_eigenvalue, min_eigenvalue(r));
      next_check += check_step;
    }
  };
  DopriStats st;
  rho = integrate_dopri5(rhs, std::move(rho), t0, t1, opt.ode, &st, on_accept);
  diag.stats.accepted += st.accepted;
  diag.stats.rejected += st.rejected;
  diag.stats.rhs_evals += st.rhs_evals;
  diag.stats.last_step = st.last_step;
  return rho;
}

LindbladResult run_once(const HamiltonianSpec& h, const PhysicalParams& p,
                        const TruncationSpec& trunc, double t_end, const LindbladOptions& opt) {
  const LindbladSystem sys(h, p, trunc);
  RunDiagnostics diag;
  DenseOp rho = advance(sys, sys.initial_state(), 0.0, t_end, opt, diag);
  diag.min_eigenvalue = std::min(diag.min_eigenvalue, min_eigenvalue(rho));
  if (diag.min_eigenvalue < -kPositivityTolerance) {
    std::ostringstream os;
    os << "density operator lost positivity (min eigenvalue " << diag.min_eigenvalue << ")";
    throw NumericError(os.str());
  }
  LindbladResult res;
  res.moments = sys.moments(rho);
  res.max_trace_error = diag.max_trace_error;
  res.max_hermiticity_error = diag.max_hermiticity_error;
  res.min_eigenvalue = diag.min_eigenvalue;
  res.stats = diag.stats;
  return res;
}

}  // namespace

std::size_t TruncationSpec::dimension() const {
  std::size_t d = 1;
  for (const auto& m : modes) d *= static_cast<std::size_t>(std::max(m.n_max, 0) + 1);
  return d;
}

void TruncationSpec::validate() const {
  if (modes.empty()) throw InvalidParameter("truncation: no modes");
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (modes[i].n_max < 2) {
      throw InvalidParameter(std::string("truncation: n_max < 2 for ") + mode_name(modes[i].mode));
    }
    if (modes[i].initial_number < 0 || modes[i].initial_number > modes[i].n_max) {
      throw InvalidParameter("truncation: initial number state outside the truncated space");
    }
    for (std::size_t j = i + 1; j < modes.size(); ++j) {
      if (modes[i].mode == modes[j].mode) throw InvalidParameter("truncation: duplicate mode");
    }
  }
  if (!(convergence_tol > 0.0)) throw InvalidParameter("truncation: convergence_tol must be > 0");
  if (dimension() > dimension_cap) {
    std::ostringstream os;
    os << "truncation: dimension " << dimension() << " exceeds cap " << dimension_cap;
    throw InvalidParameter(os.str());
  }
}

TruncationSpec TruncationSpec::enlarged(int extra) const {
  TruncationSpec out = *this;
  for (auto& m : out.modes) m.n_max += extra;
  return out;
}

int MomentSet::index_of(Mode m) const {
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (modes[i] == m) return static_cast<int>(i);
  }
  throw InvalidParameter(std::string("moment set has no ") + mode_name(m) + " mode");
}

double MomentSet::number(Mode m) const {
  const int k = index_of(m);
  return normal(k, k).real();
}

Complex MomentSet::amplitude(Mode m) const { return mean(index_of(m)); }

Complex MomentSet::square(Mode m) const {
  const int k = index_of(m);
  return anomalous(k, k);
}

Eigen::MatrixXd MomentSet::covariance() const {
  const auto n = static_cast<Eigen::Index>(modes.size());
  const Eigen::MatrixXcd nf = normal - mean.conjugate() * mean.transpose();
  const Eigen::MatrixXcd mf = anomalous - mean * mean.transpose();

  // ladder vector (o_1..o_n, o_1^dag..o_n^dag); s(a, b) = <da_a da_b>
  Eigen::MatrixXcd s(2 * n, 2 * n);
  s.topLeftCorner(n, n) = mf;
  s.topRightCorner(n, n) = nf.transpose() + Eigen::MatrixXcd::Identity(n, n);
  s.bottomLeftCorner(n, n) = nf;
  s.bottomRightCorner(n, n) = mf.transpose().conjugate();

  const double h = 1.0 / std::sqrt(2.0);
  const Complex i{0.0, 1.0};
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    t(2 * k, k) = h;
    t(2 * k, n + k) = h;
    t(2 * k + 1, k) = -i * h;
    t(2 * k + 1, n + k) = i * h;
  }
  const Eigen::MatrixXcd q = t * s * t.transpose();
  return (0.5 * (q + q.transpose())).real();
}

double MomentSet::max_difference(const MomentSet& other) const {
  if (other.modes != modes) throw InvalidParameter("moment sets cover different modes");
  double d = (mean - other.mean).cwiseAbs().maxCoeff();
  d = std::max(d, (normal - other.normal).cwiseAbs().maxCoeff());
  d = std::max(d, (anomalous - other.anomalous).cwiseAbs().maxCoeff());
  return d;
}

LindbladResult integrate_lindblad(const HamiltonianSpec& hamiltonian, const PhysicalParams& p,
                                  const TruncationSpec& trunc, double t_end,
                                  const LindbladOptions& options) {
  trunc.validate();
  if (!(t_end >= 0.0)) throw InvalidParameter("integrate_lindblad: t_end must be >= 0");

  if (std::holds_alternative<FullHamiltonian>(hamiltonian)) p.validate();

  LindbladResult res = run_once(hamiltonian, p, trunc, t_end, options);

  if (std::holds_alternative<FullHamiltonian>(hamiltonian)) {
    for (const auto& mc : trunc.modes) {
      if (res.moments.number(mc.mode) > 0.25 * mc.n_max) {
        std::ostringstream os;
        os << mode_name(mc.mode) << " occupation " << res.moments.number(mc.mode)
           << " exceeds n_max / 4 = " << 0.25 * mc.n_max;
        throw TruncationError(os.str());
      }
    }
  }

  if (options.check_convergence) {
    TruncationSpec bigger = trunc.enlarged(2);
    bigger.dimension_cap = std::max(bigger.dimension_cap, bigger.dimension());
    const LindbladResult ref = run_once(hamiltonian, p, bigger, t_end, options);
    res.convergence_delta = res.moments.max_difference(ref.moments);
    res.converged = res.convergence_delta < trunc.convergence_tol;
    if (!res.converged && options.require_convergence) {
      std::ostringstream os;
      os << "truncation not converged: moments change by " << res.convergence_delta
         << " under n_max + 2 (tol " << trunc.convergence_tol << ")";
      throw TruncationError(os.str());
    }
  }
  return res;
}

std::vector<MomentSet> sample_lindblad(const HamiltonianSpec& hamiltonian,
                                       const PhysicalParams& p, const TruncationSpec& trunc,
                                       const std::vector<double>& times,
                                       const LindbladOptions& options) {
  trunc.validate();
  const LindbladSystem sys(hamiltonian, p, trunc);
  RunDiagnostics diag;
  DenseOp rho = sys.initial_state();
  double t = 0.0;
  std::vector<MomentSet> out;
  out.reserve(times.size());
  for (double target : times) {
    if (target < t) throw InvalidParameter("sample_lindblad: times must be increasing and >= 0");
    rho = advance(sys, std::move(rho), t, target, options, diag);
    t = target;
    out.push_back(sys.moments(rho));
  }
  return out;
}

WorkingPointValidation validate_working_point(const PhysicalParams& p, const TruncationSpec& trunc,
                                              double t_end, const LindbladOptions& options) {
  trunc.validate();
  WorkingPointValidation v;
  v.predicted = derive_working_point(p);

  const auto cutoff = [&](Mode m) {
    for (const auto& mc : trunc.modes) {
      if (mc.mode == m) return mc.n_max;
    }
    throw InvalidParameter(std::string("validate_working_point needs the ") + mode_name(m) +
                           " mode in the truncation");
  };
  const std::pair<Mode, Complex> predicted[] = {{Mode::photon, v.predicted.c_bar},
                                                {Mode::magnon, v.predicted.m_bar},
                                                {Mode::phonon, v.predicted.b_bar}};
  for (const auto& [mode, amp] : predicted) {
    const int n_max = cutoff(mode);
    if (std::abs(amp) > 0.25 * n_max) {
      std::ostringstream os;
      os << "predicted " << mode_name(mode) << " amplitude " << std::abs(amp)
         << " exceeds n_max / 4 = " << 0.25 * n_max;
      throw TruncationError(os.str());
    }
  }

  v.lindblad = integrate_lindblad(FullHamiltonian{}, p, trunc, t_end, options);
  v.converged = v.lindblad.converged;
  v.measured_c = v.lindblad.moments.amplitude(Mode::photon);
  v.measured_m = v.lindblad.moments.amplitude(Mode::magnon);
  v.measured_b = v.lindblad.moments.amplitude(Mode::phonon);

  const auto deviation = [](Complex measured, Complex pred) {
    const double scale = std::abs(pred);
    return scale > 0.0 ? std::abs(measured - pred) / scale : std::abs(measured);
  };
  v.deviation_c = deviation(v.measured_c, v.predicted.c_bar);
  v.deviation_m = deviation(v.measured_m, v.predicted.m_bar);
  v.deviation_b = deviation(v.measured_b, v.predicted.b_bar);
  v.pass = v.converged && v.deviation_c <= v.tolerance && v.deviation_m <= v.tolerance &&
           v.deviation_b <= v.tolerance;
  return v;
}

}  // namespace magnomech
