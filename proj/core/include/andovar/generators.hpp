#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "andovar/linalg.hpp"

namespace andovar {

// Families of commuting strict contractions that commute exactly by
// construction:
//   Diagonal             independent random diagonals in the disc
//   JordanPoly           T1 a scaled Jordan cell, T2 = q(T1) for a random cubic q
//   TriangularCommuting  two polynomials in the nilpotent shift, conjugated
//                        by one random unitary
enum class PairKind { Diagonal, JordanPoly, TriangularCommuting };

PairKind parse_pair_kind(std::string_view name);  // "diag" | "jordan-poly" | "triangular-commuting"
std::string_view to_string(PairKind kind);

struct GeneratedPair {
  ComplexMatrix t1;
  ComplexMatrix t2;
};

// Each operator is rescaled to a norm drawn from [min_norm, max_norm], so
// both are pure strict contractions.
GeneratedPair generate_pair(PairKind kind, Eigen::Index dim, std::uint64_t seed, double max_norm = 0.85,
                            double min_norm = 0.3);

// Haar-like unitary from the QR factor of a complex Gaussian matrix.
ComplexMatrix random_unitary(Eigen::Index dim, std::mt19937_64& rng);

ComplexMatrix random_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng);

}  // namespace andovar
