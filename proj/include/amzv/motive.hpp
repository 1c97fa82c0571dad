#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "amzv/powersums.hpp"
#include "amzv/ring_a.hpp"
#include "amzv/useries.hpp"

namespace amzv {

/// Certified lower bounds on the valuations of the t-coefficients a
/// truncated series dropped.  For a series truncated at t-degree T the
/// certificate claims
///
///   val(coeff_{T+k}) >= near[k-1]          for 1 <= k <= T   (spill range)
///   val(coeff_j)     >= B + (j-2T-1) * G   for j > 2T        (far line)
///   coeff_j = 0                            for j > J
///
/// The explicit spill floors exist because products of truncated series
/// push stored-coefficient mass into (T, 2T] with valuations that grow much
/// more slowly than the deep tail; a single line over both ranges would
/// have to under-claim one of them.  kInf saturates everywhere, and J <= T
/// (with B = G = kInf) marks an exact polynomial with no tail at all.
///
/// coeff_floor[j] (size T+1) bounds the valuation of the *mathematical*
/// coefficient at t-degree j <= T, independent of how much of it the stored
/// window can see.  Stored windows cap out at the working precision, so
/// floors recomputed from them go flat in j; carrying the true floors keeps
/// product certificates from inheriting that flatness, which is what lets
/// the far line of an iterated product keep a slope the evaluation points
/// can live with.
struct TailCert {
    static constexpr int64_t kInf = int64_t(1) << 60;
    std::vector<int64_t> near;  // size T once normalised; kInf entries allowed
    int64_t B = kInf;
    int64_t G = kInf;
    int64_t J = 0;  // no tail by default
    std::vector<int64_t> coeff_floor;  // size T+1 once attached to a series

    static TailCert none(int T) {
        return {std::vector<int64_t>(size_t(T), kInf), kInf, kInf, T, {}};
    }
    bool empty(int T) const { return J <= T; }
};

/// Power series in the motive variable t truncated at t-degree T, with
/// u-series coefficients and a certified tail.  The tail certificate is what
/// lets evaluations at t = theta^{q^N} account for every dropped
/// coefficient, so "agrees to precision" statements stay meaningful after
/// truncation.
class TSeries {
  public:
    TSeries() = default;
    /// Exact zero with the given T.
    static TSeries zero(FieldPtr F, int T);
    static TSeries constant(FieldPtr F, int T, USeries c0);
    static TSeries from_coeffs(FieldPtr F, int T, std::vector<USeries> cs, TailCert tail);
    /// Exact polynomial in t with coefficients in A, rendered at prec.
    static TSeries from_apoly(const FieldPtr& F, int T, const std::vector<PolyA>& tcoeffs,
                              int64_t prec);

    int T() const { return T_; }
    const FieldPtr& field() const { return F_; }
    const USeries& coeff(size_t j) const { return c_.at(j); }
    TailCert tail() const { return tail_; }
    /// True when every stored coefficient is zero to its window.
    bool is_zero_to_prec() const;
    int64_t min_coeff_prec() const;

    TSeries operator+(const TSeries& o) const;
    TSeries operator-(const TSeries& o) const;
    TSeries operator-() const;
    TSeries operator*(const TSeries& o) const;
    TSeries scaled_code(Field::Code s) const;
    TSeries scaled(const USeries& x) const;
    TSeries pow(uint64_t k) const;
    /// Coefficient-wise q^d-power Frobenius twist (t untouched).
    TSeries twist(uint32_t d, int64_t prec_cap) const;
    /// Substitutes t = theta^{q^N}; the result's precision folds in the
    /// certified tail floor.  PrecisionError when the tail does not decay
    /// fast enough for the substitution point.
    USeries eval_theta_power(uint32_t N) const;

    std::string to_string(size_t max_deg = 4) const;

  private:
    FieldPtr F_;
    int T_ = 0;
    std::vector<USeries> c_;  // size T+1
    TailCert tail_;
};

/// Report of the Frobenius difference-equation check Psi = Phi' * Psi',
/// where Phi' is the stored forward-twisted companion matrix and Psi' the
/// coefficient-twisted Psi.
struct DiffEqReport {
    bool entries_ok = false;       ///< all residual coefficients vanished
    bool det_psi_ok = false;       ///< det Psi = Omega^{sum d_i} (Laplace)
    bool det_phi0_ok = false;      ///< det Phi'(0) = (-theta^q)^{sum d_i} != 0
    int64_t min_checked_prec = 0;  ///< weakest window a residual was checked in
    int checked_tdeg = 0;
    bool pass() const { return entries_ok && det_psi_ok && det_phi0_ok; }
};

/// Report of the period identity: the bottom-left Psi entry at t = theta
/// recovers zeta(index) up to the explicit gamma/Carlitz normalisation.
struct PeriodReport {
    bool pass = false;
    int64_t significant_digits = 0;
    int64_t residual_valuation = 0;
    int64_t zeta_valuation = 0;
};

/// Report of the specialization at t = theta^{q^N}: all but the last entry
/// of the period column vanish and the last equals
/// (prod gamma)(prod eps)^N (prod Gamma * zeta / pitilde^w)^{q^N}.
struct SpecializationReport {
    bool head_ok = false;
    bool last_ok = false;
    uint32_t N = 0;
    int64_t last_significant_digits = 0;
    std::vector<int64_t> head_prec;  ///< window each head entry vanished through
    bool pass() const { return head_ok && last_ok; }
};

/// Factor of a Kronecker product motive, repeated mult times.
struct KronFactor {
    Index index;
    uint32_t mult = 1;
};

/// Builder/checker for the t-motive side of multizeta values over one field
/// tower: the Carlitz period series Omega, the interpolation polynomials
/// H_{s-1}, the layered L-series, the matrices Phi (stored forward-twisted)
/// and Psi, and the three consistency checks relating them to zeta values.
/// Caches aggressively; not thread-safe.
class MotiveSession {
  public:
    MotiveSession(FieldPtr F, int64_t prec, int T = 16, uint32_t D = 5,
                  uint64_t budget = uint64_t(1) << 24);

    const FieldPtr& field() const { return F_; }
    int64_t prec() const { return prec_; }
    int T() const { return T_; }
    /// Effective layer cap: raised above the construction-time D when the
    /// working precision can still see deeper layers.
    uint32_t layer_cap() const { return D_; }

    /// The Carlitz period generating series (truncated at T, tail
    /// certified), at working precision.
    const TSeries& omega();
    /// 1 / Omega(theta): the period up to the distinguished root choice.
    const USeries& pi_tilde();
    /// Coefficients (by t-degree) of the interpolation polynomial H_{s-1};
    /// exact A-polynomials with subfield coefficients.
    const std::vector<PolyA>& anderson_thakur_H(uint32_t s);
    /// Layered sum L(index) truncated at layer_cap(), as a t-series.
    const TSeries& l_series(const Index& idx);

    std::vector<std::vector<TSeries>> build_phi_fwd(const Index& idx);
    std::vector<std::vector<TSeries>> build_psi(const Index& idx);

    DiffEqReport check_difference_eq(const Index& idx);
    PeriodReport check_period(const Index& idx);
    SpecializationReport check_specialization(const Index& idx, uint32_t N);

    /// Kronecker-product variants over a list of factors: the same three
    /// checks run against the tensor motive and the product of zeta values.
    DiffEqReport check_difference_eq_kron(const std::vector<KronFactor>& factors);
    PeriodReport check_period_kron(const std::vector<KronFactor>& factors);
    SpecializationReport check_specialization_kron(const std::vector<KronFactor>& factors,
                                                   uint32_t N);

    /// Significant-digit floor used by pass/fail verdicts (60 theta-digits).
    int64_t tolerance_digits() const { return 60 * (int64_t(F_->q()) - 1); }

    PowerSumEngine& zeta_engine() { return eng_; }

  private:
    FieldPtr F_;
    int64_t prec_;
    int T_;
    uint32_t D_;
    uint64_t budget_;
    PowerSumEngine eng_;

    bool omega_built_ = false;
    TSeries omega_;
    bool pi_built_ = false;
    USeries pi_tilde_;
    std::map<uint32_t, std::vector<PolyA>> h_cache_;
    std::map<Index, TSeries, IndexLess> l_cache_;
    std::map<std::pair<uint32_t, uint32_t>, TSeries> homega_twist_cache_;

    TSeries h_omega_pow(uint32_t s);               // H_{s-1} * Omega^s
    const TSeries& h_omega_twist(uint32_t s, uint32_t d);
    TSeries l_dp(const Index& idx, size_t pos, uint32_t bound,
                 std::map<std::pair<size_t, uint32_t>, TSeries>& memo);
    std::vector<TSeries> psi_column(const Index& idx);
    std::vector<PolyA> solve_H(uint32_t s);
    /// Difference-equation check on explicit matrices/columns.
    DiffEqReport diff_eq_on(const std::vector<std::vector<TSeries>>& phi,
                            const std::vector<std::vector<TSeries>>& psi, int64_t sum_d);
};

/// Omega construction at explicit precision/truncation (used by the solver
/// at elevated precision); the returned series carries its tail certificate.
TSeries build_omega(const FieldPtr& F, int64_t prec, int T);

}  // namespace amzv
