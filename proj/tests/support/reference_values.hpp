#pragma once

// High-precision values from tests/scripts/reference_values.py (mpmath, 40 digits).

namespace reference {

struct Triple {
  double a, b, x, value;
};

inline constexpr Triple kKummerM[] = {
    {1.0, 2.0, 1.0, 1.7182818284590452354},
    {-2.3, 1.5, 7.0, 3.9405696865397128503},
    {2.7, 0.5, 25.0, 113255487152671.77444},
    {0.5, 2.5, 4.0, 3.644751545932180675},
    {1.2, 1.5, -15.0, 0.012235978017499437478},
    {1000.0, 1.5, 0.5, 373712830409759947.69},
};

inline constexpr Triple kTricomiU[] = {
    {1.0, 1.5, 50.0, 0.019805719294346384279},
    {1.3, 0.5, 1.1, 0.32568533436629484714},
    {-2.75, 1.5, 8.0, 44.747759996943379502},
    {-5.25, 0.5, 30.0, 20947601.518752063307},
    {0.3, 2.5, 12.0, 0.48889274327531998076},
    {-0.7, 3.5, 0.05, -623.40827097884651585},
    {2.2, 1.5, 72.0, 7.7988972183658047196e-5},
    {-4.5, 1.5, 18.0, 76334.320446518276981},
    {-6.1, 4.5, 3.0, -4724.5184536335307599},
    {0.8, 0.5, 6.0, 0.20689946940707379858},
};

inline constexpr double kGammaHalf = 1.7724538509055160273;
inline constexpr double kGammaMinus2p5 = -0.94530872048294188123;
inline constexpr double kGamma10p3 = 716430.68906237640663;

// Parabolic cylinder D_1.8(1.5) and its derivative.
inline constexpr double kWeberD = 0.8111945567378411192;
inline constexpr double kWeberDPrime = 0.85204336214870509791;

// r^(l+1) e^(-r^2/2) M((2l+3-n)/4, l+3/2, r^2) at n = 3, l = 1, r = 2.
inline constexpr double kFigureN3L1R2 = 1.9730539311832545801;

// Zeros in chi of U((3/2 - chi)/2, 3/2, 1/2): hard-core levels at a = 1, l = 0.
inline constexpr double kHardCore[] = {2.5, 4.9011316014715605797, 7.2004817654964642204};

// r e^(-r^2/4) U(-1, 3/2, r^2/2) at r = 2: the decaying branch at chi = 3.5, l = 0.
inline constexpr double kOuterChi3p5R2 = 0.36787944117144233;

}  // namespace reference
