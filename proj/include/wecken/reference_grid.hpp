#pragma once
// Published reference values shipped with the tool so grid comparisons work
// offline: the 13x7 measured-density grid for the vn predicate (10^4 trials
// per cell) and the high-rank dstar digits.

#include <array>

namespace wecken::reference {

inline constexpr std::array<int, 13> kGridP = {2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14};
inline constexpr std::array<int, 7> kGridN = {2, 3, 4, 5, 10, 20, 50};

// rows indexed by p (2..14), columns by n (2,3,4,5,10,20,50)
inline constexpr double kVnDensity[13][7] = {
    {.3916, .3705, .3721, .3763, .3732, .3637, .3683},
    {.3128, .2980, .3068, .3210, .3338, .3472, .3597},
    {.2474, .2628, .2935, .3075, .3400, .3496, .3632},
    {.2227, .2534, .2775, .2956, .3354, .3572, .3676},
    {.1987, .2476, .2727, .2976, .3326, .3549, .3631},
    {.1969, .2414, .2776, .2980, .3206, .3356, .3621},
    {.1949, .2506, .2746, .2896, .3336, .3458, .3577},
    {.1887, .2522, .2737, .3002, .3302, .3496, .3582},
    {.1885, .2542, .2732, .2982, .3400, .3427, .3615},
    {.1902, .2412, .2755, .2961, .3341, .3465, .3604},
    {.1920, .2376, .2727, .2983, .3367, .3446, .3617},
    {.1926, .2512, .2732, .2970, .3315, .3540, .3608},
    {.1934, .2482, .2822, .2931, .3323, .3513, .3488},
};

inline constexpr std::array<std::pair<int, double>, 5> kDStarHighRank = {{
    {500, .1347}, {1000, .1350}, {1500, .1351}, {2000, .1351}, {2500, .1352},
}};

inline constexpr std::array<double, 6> kVUpperDigits = {.3403, .3430, .3511, .3590, .3634, .3661};
inline constexpr std::array<int, 6> kVUpperRanks = {2, 3, 5, 10, 20, 50};

inline constexpr std::array<double, 5> kDLowerDigits = {.0059, .0209, .0348, .0421, .0467};
inline constexpr std::array<double, 5> kDStarDigits = {.0252, .0694, .1029, .1193, .1289};
inline constexpr std::array<int, 5> kLowerBoundRanks = {3, 5, 10, 20, 50};

}  // namespace wecken::reference
