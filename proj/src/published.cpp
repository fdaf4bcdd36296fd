#include "sparse_ising/published.hpp"

#include <array>

namespace sparse_ising::published {

namespace {

constexpr std::array<SpeedupRow, 7> kSpeedup{{
    {"G65", 5546, 99.71, 5651, 8000, 0.66, 34200, 2.90, 1950},
    {"G66", 6342, 99.65, 27408, 8000, 0.67, 33200, 3.12, 8780},
    {"G67", 6922, 99.60, 6340, 4000, 0.57, 21800, 2.27, 2790},
    {"G70", 9578, 99.82, 31599, 15000, 0.65, 65800, 12.2, 2590},
    {"G72", 6982, 99.63, 6142, 7000, 0.63, 32400, 3.35, 1830},
    {"G77", 9904, 99.64, 46760, 7000, 0.66, 29900, 4.32, 10800},
    {"G81", 13992, 99.54, 62194, 3000, 0.58, 15900, 3.81, 16300},
}};

constexpr std::array<BestRow, 7> kBest{{
    {"G65", 5562, 5562, 0.6e6, 0.28, 8.41e6, 744},
    {"G66", 6364, 6364, 1.0e6, 0.45, 7.70e6, 755},
    {"G67", 6950, 6950, 0.6e6, 0.06, 44.7e6, 4960},
    {"G70", 9595, 9595, 0.4e6, 0.02, 91.2e6, 13500},
    {"G72", 7006, 7008, 2.0e6, 0.10, 87.4e6, 9690},
    {"G77", 9938, 9940, 2.0e6, 0.04, 226e6, 35500},
    {"G81", 14056, 14056, 1.0e6, 0.13, 33.1e6, 7750},
}};

constexpr std::array<BlsRow, 7> kBls{{
    {"G65", 5558, 4316, 2, 20, 431.6, 18865, 54.1, 349},
    {"G66", 6360, 6171, 1, 20, 308.55, 27702, 108, 257},
    {"G67", 6940, 3373, 1, 20, 168.65, 15142, 26.4, 574},
    {"G70", 9541, 11365, 1, 20, 568.25, 51018, 1.64, 31100},
    {"G72", 6998, 12563, 2, 20, 1256.3, 54911, 51.6, 1060},
    {"G77", 9926, 9226, 1, 20, 461.3, 41416, 44.2, 937},
    {"G81", 14030, 20422, 1, 20, 1021.1, 91676, 22.9, 4000},
}};

}  // namespace

std::span<const SpeedupRow> speedup_table() { return kSpeedup; }
std::span<const BestRow> best_table() { return kBest; }
std::span<const BlsRow> bls_table() { return kBls; }

}  // namespace sparse_ising::published
