#pragma once

// Transmutations of the three-term mother formula and the identities obtained
// by eliminating their common factor theta pairwise.

#include <array>
#include <string>
#include <vector>

#include "zmeta/levelset.hpp"
#include "zmeta/zeta_line.hpp"

namespace zmeta {

// One transmutation per pair of slots (first generation n, second n + 5).
enum class TransmutationId { COSINE = 1, POWER = 2, GAMMA = 3, BESSEL = 4, JACOBI = 5 };

inline constexpr std::array<TransmutationId, 5> kTransmutations{
    TransmutationId::COSINE, TransmutationId::POWER, TransmutationId::GAMMA,
    TransmutationId::BESSEL, TransmutationId::JACOBI};

std::string transmutation_name(TransmutationId id);
int first_slot(TransmutationId id);  // 3..7; the second-generation slot is this + 5

// |F(s)|^exponent for one level point; `text` renders it, e.g. |J_{p_4}(s_1^11)|^2.
struct Factor {
  Slot slot;
  int exponent = 2;
  double value = 0.0;
  std::string text;
};

struct Term {
  std::array<Factor, 2> factors;  // first generation, second generation
  double value = 0.0;
  std::string text() const;
};

struct TransmutationInstance {
  TransmutationId id = TransmutationId::COSINE;
  std::array<Term, 3> terms;
  std::array<double, 3> b{};
  double theta = 0.0;
  std::array<double, 3> term_defect{};  // |b_l - a_l| / a_l
  double three_term_residual = 0.0;     // |b1 - theta b2 + b3| / max b
};

// Exponents: 2 on both factors of the first two terms; on the third term 1 on
// the first-generation factor and 2 on the second-generation one, so each b_l
// equals a_l. Throws ConstructionError naming (id, l) when a term differs from
// a_l by more than tol * a_l, or the three-term form misses tol * max b.
TransmutationInstance make_transmutation(TransmutationId id, const MotherInstance& inst,
                                         const LevelAssignment& assign, double tol = 1e-8);

struct CrossbreedValues {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;  // |lhs - rhs| / max(lhs, rhs)
};

// (a1 + a3) b2 against (b1 + b3) a2.
CrossbreedValues crossbreed_values(const std::array<double, 3>& a, const std::array<double, 3>& b);

struct MetaEquation {
  TransmutationId first = TransmutationId::COSINE;
  TransmutationId second = TransmutationId::COSINE;
  int index = 0;       // 1..10 in the listing order, 0 for a self-pair
  std::string label;   // e.g. "cosine x power"
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  std::string text;    // A1*B2 + A3*B2 = B1*A2 + B3*A2
};

// Throws ContractError when the two instances carry different theta.
MetaEquation crossbreed(const TransmutationInstance& A, const TransmutationInstance& B);

// The ten pairs in listing order: cosine x power, cosine x gamma, cosine x
// Bessel, cosine x Jacobi, power x gamma, power x Bessel, power x Jacobi,
// gamma x Bessel, gamma x Jacobi, Bessel x Jacobi.
std::vector<std::array<TransmutationId, 2>> meta_equation_pairs();

struct SecondGeneration {
  std::array<TransmutationInstance, 5> transmutations;
  std::vector<MetaEquation> equations;
};

SecondGeneration second_generation(const MotherInstance& inst, const LevelAssignment& assign,
                                   double tol = 1e-8);

// Printed forms of the identities that were corrected to the structure
// forced by crossbreeding two transmutations.
struct ReconciledTypo {
  std::string where;
  std::string printed;
  std::string used;
  std::string rule;
};
std::vector<ReconciledTypo> reconciled_typos();

// Readings adopted where the printed statements leave room.
std::vector<std::string> interpretation_log();

}  // namespace zmeta
