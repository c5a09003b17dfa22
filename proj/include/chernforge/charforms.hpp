#pragma once

#include "chernforge/connections.hpp"
#include "chernforge/symfunc.hpp"

namespace chernforge {

enum class FormKind {
  PowerSum,
  Chern,
  ChernCharacter,
  Pontryagin,
  Euler,
};

/// Closed scalar form produced by an invariant polynomial of the curvature.
struct CharacteristicForm {
  FormKind kind = FormKind::Chern;
  int index = 0;  // k (or j for power sums); 0 for Euler
  FormField field;
};

/// Ring callbacks turning scalar form values into a commutative ring for the
/// symmetric-function machinery (wedge as multiplication).
struct FormValueOps {
  int dim = 0;
  FormValue add(const FormValue& a, const FormValue& b) const {
    return chernforge::add(a, b);
  }
  FormValue mul(const FormValue& a, const FormValue& b) const {
    return chernforge::wedge(a, b);
  }
  FormValue scale(const Rational& c, const FormValue& a) const {
    return chernforge::scale(to_double(c), a);
  }
  FormValue zero() const { return FormValue{}; }
  FormValue one() const { return FormValue::scalar(dim, 1.0); }
};

/// Normalized curvature X = Omega / (2 pi i); its Chern roots are real for
/// anti-Hermitian Omega, and det(I + X) generates the Chern forms.
FormValue normalized_curvature(const FormValue& omega);

/// P_j = tr(X^{wedge j}) from a raw curvature value.
FormValue power_sum_value(const FormValue& omega, int j);
/// c_k by the Newton recurrence on power sums (wedge ring).
FormValue chern_value(const FormValue& omega, int k);
/// c_k as the t^k coefficient of det(I + t X), expanded over principal
/// minors; independent oracle for rank <= 3.
FormValue chern_value_det_oracle(const FormValue& omega, int k);
/// Pfaffian of A (entries = scalar form values of even degree), perfect
/// matching expansion; rank of A must be even.
FormValue pfaffian_value(const std::vector<std::vector<FormValue>>& a);
/// Euler value Pf(Omega / 2 pi) of a real skew curvature value.
FormValue euler_value(const FormValue& omega);

CharacteristicForm power_sum_form(const BundleWithConnection& b, int j,
                                  int gauge = 0);
CharacteristicForm chern_form(const BundleWithConnection& b, int k,
                              int gauge = 0);
/// Components ch_j = P_j / j!, truncated at j <= dim/2; component 0 is the
/// rank.
symfunc::EvenAggregate<FormField> chern_character_form(
    const BundleWithConnection& b, int gauge = 0);
/// Pointwise s_k of an even aggregate of scalar forms (P_j = j! comp_j).
FormField sk_of_aggregate_form(const symfunc::EvenAggregate<FormField>& agg,
                               int k);
/// p_k = (-1)^k c_{2k} of the complexified curvature; special-orthogonal
/// bundles only.
CharacteristicForm pontryagin_form(const BundleWithConnection& b, int k,
                                   int gauge = 0);
/// Pfaffian of Omega / 2 pi; special-orthogonal, even rank.
CharacteristicForm euler_form(const BundleWithConnection& b, int gauge = 0);

/// Base-space transgression form between the k-th Chern forms of two
/// connections given as 1-form fields on a common domain:
/// dT = c_k(theta1) - c_k(theta0). Gauss-Legendre with 8 nodes in t.
FormField transgression_chern_forms(const FormField& theta0,
                                    const FormField& theta1, int k);
/// Same for the Euler form via the polarized Pfaffian.
FormField transgression_euler_forms(const FormField& theta0,
                                    const FormField& theta1);

struct TransgressionForm {
  int k = 1;
  FormField form;
};

TransgressionForm transgression_chern(const BundleWithConnection& b0,
                                      const BundleWithConnection& b1, int k,
                                      int gauge = 0);

}  // namespace chernforge
