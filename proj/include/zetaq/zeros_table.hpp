// Embedded table of the first 100 zeta-zero ordinates, generated by this
// project's own zero finder at 1e-12 refinement tolerance and cross-checked
// against find_zeros_in_range by the test suite.

#pragma once

#include <array>
#include <cstddef>

#include "zetaq/zeros.hpp"

namespace zetaq {

inline constexpr std::array<double, 100> embedded_zero_ordinates = {
    14.134725141735,     21.022039638771,     25.010857580145,     30.424876125860,
    32.935061587739,     37.586178158825,     40.918719012148,     43.327073280915,
    48.005150881168,     49.773832477672,     52.970321477714,     56.446247697064,
    59.347044002602,     60.831778524610,     65.112544048082,     67.079810529494,
    69.546401711174,     72.067157674482,     75.704690699084,     77.144840068875,
    79.337375020249,     82.910380854086,     84.735492980517,     87.425274613125,
    88.809111207635,     92.491899270558,     94.651344040520,     95.870634228245,
    98.831194218193,     101.317851005732,     103.725538040479,     105.446623052327,
    107.168611184277,     111.029535543170,     111.874659176993,     114.320220915453,
    116.226680320857,     118.790782865976,     121.370125002421,     122.946829293553,
    124.256818554346,     127.516683879597,     129.578704199956,     131.087688530933,
    133.497737202998,     134.756509753374,     138.116042054533,     139.736208952121,
    141.123707404021,     143.111845807621,     146.000982486766,     147.422765342559,
    150.053520420785,     150.925257612241,     153.024693811198,     156.112909294238,
    157.597591817594,     158.849988171421,     161.188964137596,     163.030709687182,
    165.537069187901,     167.184439978175,     169.094515415569,     169.911976479411,
    173.411536519592,     174.754191523366,     176.441434297711,     178.377407776100,
    179.916484020257,     182.207078484367,     184.874467848387,     185.598783677708,
    187.228922583502,     189.416158656017,     192.026656360713,     193.079726603845,
    195.265396679529,     196.876481840958,     198.015309676252,     201.264751943704,
    202.493594514140,     204.189671803105,     205.394697202163,     207.906258887806,
    209.576509716856,     211.690862595365,     213.347919359712,     214.547044783492,
    216.169538508264,     219.067596349021,     220.714918839314,     221.430705554694,
    224.007000254605,     224.983324669582,     227.421444279680,     229.337413305526,
    231.250188700499,     231.987235253180,     233.693404178908,     236.524229665816
};

// The embedded table as a ZeroTable (ordinals 1..100).
inline ZeroTable embedded_zeros(std::size_t count = embedded_zero_ordinates.size()) {
    if (count > embedded_zero_ordinates.size())
        throw std::invalid_argument("embedded_zeros: only " +
                                    std::to_string(embedded_zero_ordinates.size()) +
                                    " zeros are embedded");
    std::vector<ZetaZero> zeros;
    zeros.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        zeros.push_back({static_cast<long>(i) + 1, embedded_zero_ordinates[i]});
    return ZeroTable(std::move(zeros), ZeroSource::embedded());
}

} // namespace zetaq
