#pragma once

// Generated by tests/oracles/make_oracles.py; do not edit.

#include <complex>

namespace oracle {

inline const std::complex<double> kLogGamma3p4i{-1.7566267846037841105, 4.7426644380346579282};
inline const std::complex<double> kZetaHalfPlus10i{1.5448952202967527669, -0.11533646527127337544};
inline const std::complex<double> kZetaMinus3p2i{0.021849726480462498719, 0.047174437273089423413};
inline constexpr double kXiHalf = 0.49712077818831410991;
inline constexpr double kXi2 = 0.52359877559829887308;
inline const std::complex<double> kXi07p20i{-0.000035560821947163265833, -0.000011712473937749301777};
inline constexpr double kFirstZetaZero = 14.13472514173469379;
inline const std::complex<double> kTheta15At2p1i{0.83583873423104478081, 0.23733547671110534161};
inline const std::complex<double> kA15At3p05i{0.41781929213795679301, -0.0323090030911248389};
inline const std::complex<double> kB15At3p05i{0.0901309811514290934, 0.0088688825673572254489};
inline constexpr double kG2At04 = -11.843525281307228589;
inline constexpr double kG2At08 = 3.9478417604357434475;
inline constexpr double kG15At05 = -4.3253426992364167258;
inline constexpr double kG1_2At03 = -5.6976230483131520991;
inline constexpr double kG1_15At06 = 1.4634369117557027715;
inline constexpr double kH2At25 = 1.1843525281307230343;
inline constexpr double kH15At37 = -0.58320559860033284846;
inline constexpr double kH1_2At3 = 0.51449311454006148915;
inline constexpr double kTrace15At15 = 0.49766976748423955596;
inline constexpr double kHS15At15 = 2.448350111401374467;
inline constexpr double kAZero15_1 = 12.769707989144236774;
inline constexpr double kAZero15_2 = 19.386702259339263854;
inline constexpr double kAZero15_3 = 23.935678076406210101;
inline constexpr double kAZero15_4 = 28.697770437379323379;

}  // namespace oracle
