// Generated by tests/oracle/closed_form_reference.py -- do not edit.
#pragma once

namespace oracle {

inline constexpr double kPhi1e6Kappa5 = -1.5563208552094912;
inline constexpr double kPhi0p1Kappa5 = -1.4841548816453666;
inline constexpr double kPhi1Kappa5 = 0.0;
inline constexpr double kDefaultA = 13843.089071781412;
inline constexpr double kDefaultB = 21545.288222936008;
inline constexpr double kWideAKappa10 = 6395.0289310086424;
inline constexpr double kWideBKappa10 = 10000.0;
inline constexpr double kWideAKappa11 = 6392.3388499782618;
inline constexpr double kWideBKappa11 = 10000.0;
inline constexpr double kTflexKappa1 = 0.36787944117144232;
inline constexpr double kTflexKappa5 = 0.13809742051683541;
inline constexpr double kTflex2Kappa5 = 0.9799986323431292;
inline constexpr double kSizingRaw0p01 = 401.43492788624988;
// rounds to 401.0
inline constexpr double kRminOver0p99 = 101.01010101010101;
inline constexpr double kPhiD1At1e3Kappa5 = 4.1878604692804924;
inline constexpr double kFixedPointBeta0p01 = 1000.0;
inline constexpr double kFixedPointBeta1e5 = 268.3535879613265;
// geometric settling index = 7

}  // namespace oracle
