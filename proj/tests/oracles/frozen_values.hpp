#pragma once

// Reference values from tests/oracles/generate_oracles.py (mpmath at 40
// digits, sympy for derivatives and limits). a = 1, b = 1.5 throughout.

namespace frozen {

inline constexpr double kKappaSeed = 2.0116;

inline constexpr double kSteklovB1 = 0.40830302260391133;
inline constexpr double kSteklovB2 = -2.4165705463405745;
inline constexpr double kSteklovS2 = 2.4131037775216711;
inline constexpr double kSteklovDB1 = 3.8560733904902229;
inline constexpr double kSteklovDB2 = 0.8261367310897224;

// odd (n=1, m=1) at (-0.5, 0.5) and its Laplacian
inline constexpr double kOdd11Value = -0.14436171681701752;
inline constexpr double kOdd11Laplacian = 2.1753404229874142;
// even (n=2, m=3) at (0.3, 0.4) and its Laplacian
inline constexpr double kEven23Value = 0.14809889332618979;
inline constexpr double kEven23Laplacian = -6.4726786297363434;
// -d/dy on y = 0+: even (2, 1) at x = 0.5, odd (1, 2) at x = -0.25
inline constexpr double kEven21NormalDerivative = 0.84147098480789651;
inline constexpr double kOdd12NormalDerivative = 1.3632775200466683;

// DtN entries for the linear function r - a at kappa = 2.0116, N = 200
inline constexpr double kDeltaLinearVolume = 0.26179938779914944;
inline constexpr double kDeltaLinear = 0.8925687161419089;
inline constexpr double kLambdaLinear = 3.9044069744503921;

// (psi_1 | 1) on (-1, 1)
inline constexpr double kConstantProjection1 = 1.2732395447351627;

}  // namespace frozen
