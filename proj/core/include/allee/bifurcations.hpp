#pragma once

// Saddle-node (Sotomayor), Hopf (first Lyapunov coefficient) and
// Bogdanov-Takens (normal-form coefficient chain) analyses.

#include <array>
#include <optional>
#include <string_view>

#include "allee/equilibria.hpp"
#include "allee/model.hpp"
#include "allee/normal_forms.hpp"

namespace allee {

// ---- Saddle-node ----------------------------------------------------------

enum class SotomayorVerdict { SaddleNodeBifurcation, Degenerate };

struct SotomayorReport {
  Vec2 v{};  ///< right null vector, first component 1
  Vec2 w{};  ///< left null vector
  double transversality1 = 0.0;  ///< w . f_mu
  double transversality2 = 0.0;  ///< w . D^2 f (v, v)
  SotomayorVerdict verdict = SotomayorVerdict::Degenerate;
};

/// Throws NoZeroEigenvalue unless J(u) has a simple zero eigenvalue.
SotomayorReport sotomayor_saddle_node(const ModelParams& p, const State& u, Parameter bif_param);

// ---- Hopf -----------------------------------------------------------------

enum class WeakFocus { E8, E9 };
enum class HopfDirection { Supercritical, Subcritical, Undetermined };

/// The printed list of phi terms disagrees with the general formula in two
/// places; both are available.
enum class PhiVariant { Consistent, AsPrinted };

std::string_view to_string(WeakFocus w) noexcept;
std::string_view to_string(HopfDirection d) noexcept;
std::optional<WeakFocus> weak_focus_from_string(std::string_view s) noexcept;

/// Interior root of the diagonal branch used by `which`. Throws
/// HopfInadmissible when the diagonal branch has no pair of simple roots.
State weak_focus_location(const ModelParams& p, WeakFocus which);

/// Value of s at which trace J vanishes at E8/E9 (p.s is ignored).
/// Throws HopfInadmissible for the wrong ordering of m and x, or s <= 0.
double hopf_critical_s(const ModelParams& p, WeakFocus which);

inline constexpr double kWeakCenterTraceTolerance = 1e-10;
inline constexpr double kSigmaTolerance = 1e-9;

struct HopfReport {
  WeakFocus which = WeakFocus::E8;
  State location;
  double s_critical = 0.0;
  double transversality = 0.0;  ///< d trace / ds = m - x
  double M = 0.0;               ///< det J at the weak center
  std::array<double, 8> phi{};
  double sigma = 0.0;             ///< from the phi list
  double sigma_general = 0.0;     ///< from the general planar formula
  double sigma_as_printed = 0.0;  ///< phi list with the printed phi6, phi7
  double sigma_corrected = 0.0;   ///< general formula with a11*b20 in the a*b group
  /// Decided by sigma_corrected; sigma and sigma_general keep the published form.
  HopfDirection direction = HopfDirection::Undetermined;
};

/// Requires p.s to be the critical value: throws NotAWeakCenter when
/// |trace J| > 1e-10 or det J <= 0.
HopfReport first_lyapunov_coefficient(const ModelParams& p, WeakFocus which);

/// The eight phi terms for a field with a02 = a30 = a21 = a12 = a03 = 0.
std::array<double, 8> phi_terms(const TaylorCoefficients& t, PhiVariant variant);

enum class LyapunovFormula { AsPublished, Corrected };

/// sigma = -3 pi / (2 b D^{3/2}) * {...} for a general planar field with
/// linear part [[a, b], [c, d]], a + d = 0 and D = ad - bc > 0. The published
/// bracket has a11*b02 inside the a*b group; Corrected uses a11*b20, which
/// is what the normal-form computation gives when a != 0.
double lyapunov_sigma_general(const TaylorCoefficients& t, LyapunovFormula formula = LyapunovFormula::Corrected);

// ---- Bogdanov-Takens ------------------------------------------------------

/// (h3, s1) cusp point for the given q, m. Throws CuspConditionsViolated when
/// s1 is not positive (m >= 2 h3) or the parameters are out of range.
ModelParams cusp_base(double q, double m);

/// Expansion of the perturbed system (h = h3 + eta1, s = s1 + eta2) about
/// the unperturbed cusp E7 = (2 h3, 2 h3). The prey equation has no cubic
/// terms and a02 = 0; the predator equation has no constant term.
struct BtExpansion {
  double a00, a10, a01, a20, a11;
  double b10, b01, b20, b11, b02;
};

struct BtLadder {
  BtExpansion ab{};
  struct { double c00, c20, c11; } c{};
  struct { double d00, d10, d01, d20, d11, d02; } d{};
  struct { double e00, e10, e01, e20, e11, e02; } e{};
  struct { double f00, f10, f01, f20, f11; } f{};
  struct { double g00, g10, g01, g11; } g{};
  struct { double h00, h01, h11; } h{};
  double l00 = 0.0;
  double l01 = 0.0;
  /// f20 > 0: the u-axis is reflected instead of assuming f20 < 0.
  bool mirrored = false;
};

BtExpansion bt_expansion(const ModelParams& base, double eta1, double eta2);

/// Runs the coefficient chain. Throws SignAssumptionViolated when f20 is
/// numerically zero and NumericalFailure when a01 = 0.
BtLadder reduce_bt(const BtExpansion& ab);

enum class BtVerdict { BTCodim2, Degenerate };

struct BTReport {
  std::array<double, 2> eta{};
  BtLadder ladder;
  double l00 = 0.0;
  double l01 = 0.0;
  Mat2 jacobian{};  ///< d(l00, l01) / d(eta1, eta2) at eta = 0
  double jac_det = 0.0;
  BtVerdict verdict = BtVerdict::Degenerate;
  bool mirrored = false;
};

inline constexpr double kBtMaxEta = 1e-2;
inline constexpr double kBtJacobianThreshold = 1e-6;

/// Central-difference Jacobian of (l00, l01) in eta at the origin.
Mat2 bt_parameter_jacobian(const ModelParams& base, double step);

/// Throws CuspConditionsViolated unless base is (q, s1, h3, m) for its q, m;
/// InvalidArgument when |eta| exceeds kBtMaxEta.
BTReport bt_normal_form(const ModelParams& base, std::array<double, 2> eta, double fd_step = 1e-6);

std::string_view to_string(SotomayorVerdict v) noexcept;
std::string_view to_string(BtVerdict v) noexcept;

}  // namespace allee
