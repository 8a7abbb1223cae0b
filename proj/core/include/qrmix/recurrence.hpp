#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qrmix/action.hpp"
#include "qrmix/conjugacy.hpp"
#include "qrmix/group.hpp"
#include "qrmix/mixing.hpp"

namespace qrmix {

/// min(eps + sqrt(5 eps), 4 sqrt(eps)).
double recurrence_bound(double epsilon);

/// eps + sqrt(5 eps) <= 4 sqrt(eps).
bool bound_chain_holds(double epsilon);

struct RecurrenceReport {
  std::string group;
  std::size_t order = 0;
  std::uint64_t D = 0;
  double epsilon = 0.0;        // D^{-1/2}
  double bound_total = 0.0;    // recurrence_bound(epsilon)
  double bound_corollary = 0.0;  // 4 D^{-1/4}
  double bound_case_i = 0.0;   // epsilon
  double bound_case_ii = 0.0;  // sqrt(5 epsilon)
  double measured_total = 0.0;
  double measured_case_i = 0.0;
  double measured_case_ii = 0.0;
  EvalMode mode = EvalMode::exact;
  std::size_t samples = 0;  // number of g averaged over
  std::uint64_t seed = 0;
  bool pass = false;  // measured_total <= bound_total + kBoundTolerance

  bool decomposition_consistent() const {
    return measured_total <= measured_case_i + measured_case_ii + kBoundTolerance;
  }
};

struct RecurrenceOptions {
  /// exact: every g. monte_carlo: `samples` seeded draws of g; the inner sum
  /// over x stays exact.
  EvalMode mode = EvalMode::exact;
  std::size_t samples = 2000;
  std::uint64_t seed = 0;
};

/// (1/|G|) sum_x f1(x) f2(g^{-1} x) f3(g^{-1} x g). No conjugation.
Complex triple_product_average(const Group& g, const Observable& f1, const Observable& f2,
                               const Observable& f3, Element h);

/// Average over g of
///   | (1/|G|) sum_x f1(x) (g ._l f2)(x) (g ._c f3)(x) - (1/|G|) sum_x f1 P_l(f2) P_c(f3) |,
/// together with the two case errors (f3 replaced by P_c f3 and by
/// f3 - P_c f3). Requires sup norms <= 1 + 1e-12.
RecurrenceReport triple_recurrence_error(const Group& g, const ConjugacyData& classes,
                                         std::uint64_t D, const Observable& f1,
                                         const Observable& f2, const Observable& f3,
                                         const RecurrenceOptions& options = {});
RecurrenceReport triple_recurrence_error(const Group& g, const Observable& f1, const Observable& f2,
                                         const Observable& f3, const RecurrenceOptions& options = {});

struct CaseDecomposition {
  double case_i = 0.0;
  double case_ii = 0.0;
  double projected_linf = 0.0;  // |P_c f3|_inf
  double f3_linf = 0.0;
  double residual_l2 = 0.0;     // |f3 - P_c f3|_2
  double f3_l2 = 0.0;

  /// |P_c f3|_inf <= |f3|_inf and |f3 - P_c f3|_2 <= |f3|_2, within 1e-12.
  bool norm_facts_hold() const {
    return projected_linf <= f3_linf + 1e-12 && residual_l2 <= f3_l2 + 1e-12;
  }
};

CaseDecomposition case_decomposition(const Group& g, const ConjugacyData& classes,
                                     const Observable& f1, const Observable& f2,
                                     const Observable& f3, const RecurrenceOptions& options = {});

/// (e_g) indexed by a group, all on one space. Families built from explicit
/// members keep them; correlation families above 1024 elements compute
/// members on demand.
class VectorFamily {
 public:
  VectorFamily(Group index, std::vector<Observable> members);

  /// e_g = (g ._l f2)(g ._c f3) on X = G.
  static VectorFamily correlation(const Group& g, const Observable& f2, const Observable& f3);

  const Group& index_group() const { return index_; }
  const SpacePtr& space() const { return space_; }
  Observable member(Element g) const;
  /// Recorded uniform L2 bound: the largest member norm for explicit
  /// families, |f2|_inf |f3|_inf for correlation families.
  double l2_bound() const { return l2_bound_; }
  bool materialized() const { return !members_.empty(); }
  /// Empty unless materialized.
  std::span<const Observable> members() const { return members_; }

 private:
  VectorFamily(Group index, SpacePtr space) : index_(std::move(index)), space_(std::move(space)) {}

  Group index_;
  SpacePtr space_;
  std::vector<Observable> members_;
  std::optional<Observable> f2_;
  std::optional<Observable> f3_;
  double l2_bound_ = 0.0;
};

/// e_g(x) = f2(g^{-1} x) f3(g^{-1} x g).
Observable correlation_member(const Group& g, const Observable& f2, const Observable& f3, Element h);

inline VectorFamily correlation_family(const Group& g, const Observable& f2, const Observable& f3) {
  return VectorFamily::correlation(g, f2, f3);
}

/// bilinear: sum of plain products (the integral of e_g e_{gh}).
/// sesquilinear: the Hilbert inner product, with F2 = f2 conj(h._l f2) and
/// F3 = f3 conj(h._c f3) on the right side.
enum class Pairing { bilinear, sesquilinear };

std::string_view pairing_name(Pairing p);

struct GramCheck {
  Complex lhs;
  Complex rhs;
  double discrepancy = 0.0;
  Pairing pairing = Pairing::bilinear;
};

/// lhs pairs e_g with e_{gh} built from the raw family; rhs pairs
/// F2^(h) = f2 (h._l f2) with g._r F3^(h), F3^(h) = f3 (h._c f3).
GramCheck gram_identity_check(const Group& g, const Observable& f2, const Observable& f3,
                              Element a, Element h, Pairing pairing = Pairing::bilinear);

struct VdcOptions {
  std::size_t exact_max_order = 512;
  std::size_t pair_samples = 20000;
  std::uint64_t seed = 0;
};

struct VdcReport {
  double epsilon_lhs = 0.0;    // (1/|G|^2) sum_{g,h} |<e_g, e_{gh}>|
  double rhs_integral = 0.0;   // (1/|G|) sum_g |<f, e_g>|
  double bound = 0.0;          // sqrt(epsilon_lhs) |f|_2
  bool pass = false;           // rhs_integral <= bound + kBoundTolerance
  bool exact = true;
  std::size_t pair_samples = 0;  // sampled mode only
};

/// Quantitative van der Corput check. Exact up to options.exact_max_order;
/// above, epsilon_lhs is estimated from seeded (g, h) pairs while the
/// right-hand integral stays exact.
VdcReport vdc_check(const VectorFamily& family, const Observable& f, const VdcOptions& options = {});

struct BesselReport {
  double sum_of_squares = 0.0;  // sum_n |<f, e_n>|^2 / |e_n|^2
  double norm_sq = 0.0;
  bool pass = false;
};

/// Finite Bessel inequality. Throws PreconditionError naming the first pair
/// with |<e_i, e_j>| > 1e-10. Zero members contribute nothing.
BesselReport bessel_check(std::span<const Observable> family, const Observable& f);

}  // namespace qrmix
