#pragma once

#include <cstdint>
#include <map>

#include "amzv/index.hpp"
#include "amzv/useries.hpp"

namespace amzv {

/// Precision marker used for values that are exactly zero (not merely zero
/// to working precision); additions clamp it down to the partner's window.
inline constexpr int64_t kExactZeroPrec = int64_t(1) << 62;

/// A fully evaluated multizeta value: the series, the index it came from,
/// how many degree layers were summed, and a lower bound for the valuation
/// of everything that was dropped.
struct ZetaValue {
    Index index;
    USeries value;
    uint32_t d_max_used = 0;
    int64_t tail_valuation_bound = 0;
};

/// Non-vanishing certificate: the leading layer d = depth-1 dominates every
/// later layer strictly, so the leading valuation and digit of the evaluated
/// series are provably those of the full sum.
struct NonvanishingCert {
    Index index;
    int64_t leading_valuation = 0;
    Field::Code leading_coeff = 0;
    uint32_t d_max_used = 0;
    int64_t tail_valuation_bound = 0;
};

/// Evaluator for power sums over monic polynomials and the multizeta values
/// built from them.
///
///   S_d(s)            sum of a^{-s} over the q^d monic a of degree d
///   S_d(s; eps)       eps^d S_d(s)
///   S_d(idx)          S_d(s1; e1) * S_{<d}(tail)    (0 when depth-1 > d)
///   S_{<d}(idx)       sum of S_{d'}(idx) over d' < d
///   zeta(idx)         sum of S_d(idx) over d >= 0
///
/// The degree loop in zeta() stops at the first layer whose valuation
/// reaches the working precision.  Layers must have strictly increasing
/// valuation (each one's leading degree strictly dominates the next); that
/// fact justifies the truncation, so it is enforced with a GuardError.
///
/// Instances cache aggressively and are not thread-safe.
class PowerSumEngine {
  public:
    PowerSumEngine(FieldPtr F, int64_t prec, uint64_t budget);

    const FieldPtr& field() const { return F_; }
    int64_t prec() const { return prec_; }

    const USeries& sd_single(uint32_t d, uint32_t s);
    USeries alt_sd_single(uint32_t d, uint32_t s, uint32_t eps_exp);
    USeries sd(uint32_t d, const Index& idx);
    const USeries& sless(uint32_t d, const Index& idx);
    ZetaValue zeta(const Index& idx);
    NonvanishingCert nonvanishing(const Index& idx);

    /// Exact fraction form of S_d(s), supported for d <= 2.
    FracA sd_fraction(uint32_t d, uint32_t s);

  private:
    FieldPtr F_;
    int64_t prec_;
    uint64_t budget_;

    struct SlessKey {
        uint32_t d;
        Index idx;
        bool operator<(const SlessKey& o) const {
            if (d != o.d) return d < o.d;
            return IndexLess{}(idx, o.idx);
        }
    };

    std::map<std::pair<uint32_t, uint32_t>, USeries> sd_cache_;
    std::map<SlessKey, USeries> sless_cache_;
    std::map<Index, ZetaValue, IndexLess> zeta_cache_;
};

}  // namespace amzv
