#include "zmeta/equations.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "zmeta/errors.hpp"

namespace zmeta {

namespace {

std::string slot_symbol(Slot s) {
  return "s_" + std::to_string(s.l) + "^" + std::to_string(s.n);
}

int param_index(Slot s) { return s.n <= 7 ? s.l : s.l + 3; }

Factor make_factor(const LevelPoint& p, int exponent) {
  Factor f;
  f.slot = p.spec.slot;
  f.exponent = exponent;
  f.value = std::pow(std::abs(p.spec.family.value(p.s)), exponent);
  const std::string s = slot_symbol(f.slot);
  const std::string i = std::to_string(param_index(f.slot));
  const std::string sq = exponent == 2 ? "^2" : "";
  const char* jac[] = {"sn", "cn", "dn"};
  switch (p.spec.family.kind) {
    case FamilyKind::COSINE:
      f.text = "|cos " + s + "|" + sq;
      break;
    case FamilyKind::POWER:
      f.text = "|" + s + "|^{" + (exponent == 2 ? "2" : "") + "n_" + i + "}";
      break;
    case FamilyKind::RECIP_GAMMA:
      f.text = "1/|Gamma(" + s + ")|" + sq;
      break;
    case FamilyKind::BESSEL:
      f.text = "|J_{p_" + i + "}(" + s + ")|" + sq;
      break;
    case FamilyKind::JACOBI:
      f.text = "|" + std::string(jac[static_cast<int>(p.spec.family.jacobi)]) + "(" + s + ",k_" +
               i + ")|" + sq;
      break;
  }
  return f;
}

}  // namespace

std::string transmutation_name(TransmutationId id) {
  switch (id) {
    case TransmutationId::COSINE:
      return "cosine";
    case TransmutationId::POWER:
      return "power";
    case TransmutationId::GAMMA:
      return "gamma";
    case TransmutationId::BESSEL:
      return "bessel";
    case TransmutationId::JACOBI:
      return "jacobi";
  }
  return "?";
}

int first_slot(TransmutationId id) { return static_cast<int>(id) + 2; }

std::string Term::text() const { return factors[0].text + " " + factors[1].text; }

TransmutationInstance make_transmutation(TransmutationId id, const MotherInstance& inst,
                                         const LevelAssignment& assign, double tol) {
  TransmutationInstance t;
  t.id = id;
  t.theta = inst.theta;
  const int n1 = first_slot(id);
  for (int l = 1; l <= 3; ++l) {
    Term& term = t.terms[l - 1];
    term.factors[0] = make_factor(assign.at(n1, l), l == 3 ? 1 : 2);
    term.factors[1] = make_factor(assign.at(n1 + 5, l), 2);
    term.value = term.factors[0].value * term.factors[1].value;
    t.b[l - 1] = term.value;
    const double a = inst.a[l - 1];
    t.term_defect[l - 1] = std::abs(term.value - a) / a;
    if (!(t.term_defect[l - 1] <= tol)) {
      std::ostringstream msg;
      msg << "transmutation " << transmutation_name(id) << ", term " << l << ": b = " << term.value
          << " differs from the mother term " << a << " by " << t.term_defect[l - 1]
          << " (relative)";
      throw ConstructionError(msg.str());
    }
  }
  const double m = std::max({t.b[0], t.b[1], t.b[2]});
  t.three_term_residual = std::abs(t.b[0] - t.theta * t.b[1] + t.b[2]) / m;
  if (!(t.three_term_residual <= tol)) {
    std::ostringstream msg;
    msg << "transmutation " << transmutation_name(id) << ": b1 - theta b2 + b3 = "
        << t.three_term_residual << " (relative)";
    throw ConstructionError(msg.str());
  }
  return t;
}

CrossbreedValues crossbreed_values(const std::array<double, 3>& a,
                                   const std::array<double, 3>& b) {
  CrossbreedValues v;
  v.lhs = (a[0] + a[2]) * b[1];
  v.rhs = (b[0] + b[2]) * a[1];
  const double m = std::max(v.lhs, v.rhs);
  v.residual = m > 0.0 ? std::abs(v.lhs - v.rhs) / m : 0.0;
  return v;
}

std::vector<std::array<TransmutationId, 2>> meta_equation_pairs() {
  std::vector<std::array<TransmutationId, 2>> out;
  for (std::size_t i = 0; i < kTransmutations.size(); ++i) {
    for (std::size_t j = i + 1; j < kTransmutations.size(); ++j) {
      out.push_back({kTransmutations[i], kTransmutations[j]});
    }
  }
  return out;
}

MetaEquation crossbreed(const TransmutationInstance& A, const TransmutationInstance& B) {
  if (A.theta != B.theta) {
    throw ContractError("crossbreed: transmutations come from different mother instances");
  }
  MetaEquation e;
  e.first = A.id;
  e.second = B.id;
  e.label = transmutation_name(A.id) + " x " + transmutation_name(B.id);
  const auto pairs = meta_equation_pairs();
  const auto it = std::find(pairs.begin(), pairs.end(), std::array{A.id, B.id});
  e.index = it == pairs.end() ? 0 : static_cast<int>(it - pairs.begin()) + 1;
  const auto v = crossbreed_values(A.b, B.b);
  e.lhs = v.lhs;
  e.rhs = v.rhs;
  e.residual = v.residual;
  const std::string a2 = A.terms[1].text();
  const std::string b2 = B.terms[1].text();
  e.text = A.terms[0].text() + " " + b2 + " + " + A.terms[2].text() + " " + b2 + " = " +
           B.terms[0].text() + " " + a2 + " + " + B.terms[2].text() + " " + a2;
  return e;
}

SecondGeneration second_generation(const MotherInstance& inst, const LevelAssignment& assign,
                                   double tol) {
  SecondGeneration g;
  for (std::size_t i = 0; i < kTransmutations.size(); ++i) {
    g.transmutations[i] = make_transmutation(kTransmutations[i], inst, assign, tol);
  }
  for (const auto& [a, b] : meta_equation_pairs()) {
    g.equations.push_back(
        crossbreed(g.transmutations[static_cast<int>(a) - 1], g.transmutations[static_cast<int>(b) - 1]));
  }
  return g;
}

std::vector<ReconciledTypo> reconciled_typos() {
  const std::string third =
      "third term carries the first-generation factor to power 1 and the second-generation "
      "factor squared, so that it equals c_3^2 cos 2 alpha0";
  const std::string cross = "each identity is the crossbreed of its two transmutations";
  return {
      {"gamma transmutation, third term", "1/|Gamma(s_3^5) Gamma(s_3^10)|",
       "1/|Gamma(s_3^5)| 1/|Gamma(s_3^10)|^2", third},
      {"bessel transmutation, third term", "|J_{p_3}(s_3^6)| |J_{p_6}(s_3^11)|",
       "|J_{p_3}(s_3^6)| |J_{p_6}(s_3^11)|^2", third},
      {"jacobi transmutation, third term", "|dn(s_3^7,k_3)| |dn(s_3^12,k_6)|",
       "|dn(s_3^7,k_3)| |dn(s_3^12,k_6)|^2", third},
      {"cosine x power identity, middle power term", "|s_2^9|^{2n_6}", "|s_2^9|^{2n_5}", cross},
      {"power x gamma identity", "|s_3^9|^{2n_5} and |s_2^9|^{2n_6}",
       "|s_3^9|^{2n_6} and |s_2^9|^{2n_5}", cross},
      {"power x bessel identity", "|s_3^9|^{2n_5} and |s_2^9|^{2n_6}",
       "|s_3^9|^{2n_6} and |s_2^9|^{2n_5}", cross},
      {"power x jacobi identity", "|s_3^9|^{2n_5} and |s_2^9|^{2n_6}",
       "|s_3^9|^{2n_6} and |s_2^9|^{2n_5}", cross},
      {"cosine x bessel identity, second left term", "|J_{p_3}(s_2^6)|", "|J_{p_2}(s_2^6)|",
       cross},
      {"gamma level curves", "defined with the cosine family's set label",
       "the gamma family's own set label", "the loci are those of 1/|Gamma|"},
  };
}

std::vector<std::string> interpretation_log() {
  return {
      "the quantifier on L is read as L >= L0 with L0 = " + std::to_string(kMinL),
      "U is admissible on the open interval (0, pi/4)",
      "k^2 is taken in the open interval (0, 1) for all six moduli",
      "first-generation targets are |sin alpha0_1|, |cos alpha0_2| and cos 2 alpha0_3, so each "
      "transmutation term equals its mother term",
      "the ladder phi_1 is a model (asymptotic: T - (1 - gamma) T / ln T, or a translation); "
      "the identities do not depend on it because theta cancels",
      "the bessel x jacobi identity from the introduction pairs the Bessel factors differently; "
      "the crossbred form is certified and the variant is not",
  };
}

}  // namespace zmeta
