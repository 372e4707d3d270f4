#pragma once
// Values produced by the brute-force oracles in oracles.hpp, written down once.

namespace frozen {

inline constexpr double kGrslAbs = 1.0;
inline constexpr double kGrslVee = 1.0;
inline constexpr double kGrslDisplacement04 = 0.6;
inline constexpr double kGrslL1 = 1.0;
inline constexpr double kGrslHexagon = 0.866025403784;
inline constexpr double kGrslMinOfCones = 0.894427191;
inline constexpr double kGrslLinear34 = -5.0;

inline constexpr double kLipMinOfMax31 = 3.0;
inline constexpr double kSharVee = 1.0;
inline constexpr double kRadialSublevelDistance = 1.5;

inline constexpr double kErrAbs = 1.0;
inline constexpr double kErrVee = 1.0;
inline constexpr double kErrAbsPlusX = 2.0;

}  // namespace frozen
