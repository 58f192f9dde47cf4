#pragma once

// Seeded generators with planted ground truth, and brute-force oracles that share
// no code with the system module.
//
// Generated sequences are indexed by nat. Tables cover 0..length-1; beyond that the
// system is constant: X_n = X_{length-1} and every bond into the tail is the bond to
// length-1.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "prokit/dmorphism.hpp"
#include "prokit/system.hpp"

namespace prokit {

struct PlantSpec {
  std::size_t length = 64;
  Backend backend = Backend::FinSet;
  std::size_t min_points = 2;  // finset object sizes
  std::size_t max_points = 6;
  std::int64_t modulus = 3;    // matmod objects are (Z/modulus)^dim, 1 <= dim <= max_dim
  int max_dim = 3;
  /// Intended minimal commutation index per index below length; empty means strict.
  /// Valid entries are d(a) = a or a + 2 <= d(a) < length.
  std::vector<std::size_t> delay_profile;
  /// Planted level isos only: first index from which the components are the plain
  /// conjugating bijections.
  std::size_t morphism_delay = 0;
  std::uint64_t seed = 0;
};

/// Throws GenerationError on an invalid spec.
void validate(const PlantSpec& spec);

/// d(a) = a + k with k drawn from {0, 2, ..., max_delay}, falling back to a near the end.
std::vector<std::size_t> random_profile(std::size_t length, std::size_t max_delay, std::uint64_t seed);
/// d(a) = a + step, or a where that runs past the end. step must not be 1.
std::vector<std::size_t> step_profile(std::size_t length, std::size_t step);

DelaySystem gen_strict_sequence(const PlantSpec& spec);
DelaySystem gen_planted_sequence(const PlantSpec& spec);

struct PlantedLevelIso {
  DelaySystem source;
  DelaySystem target;
  DelayMorphism morphism;  // level, components invertible
  DelayMorphism inverse;   // levelwise inverse
};

/// Two strict sequences (delay_profile is not used) and components sigma_n rho_n, where
/// rho_n is a transposition fixing the image of bond(n, morphism_delay) below the delay
/// and the identity from it on. The square (0, morphism_delay - 1) always fails.
/// FinSet only; object sizes are raised to at least 4.
PlantedLevelIso gen_planted_level_iso(const PlantSpec& spec);

/// Two-point sequence whose bonds from 0 alternate between identity and swap: no
/// commutation index at 0 exists in any window.
DelaySystem gen_adversarial_sequence();

/// First candidate a* >= a (in enumeration order, non-vacuous unless the window is the
/// whole poset) such that every a <= a' <= a'' with a' >= a* commutes inside window(horizon).
std::optional<IndexElem> oracle_min_commutation(const DelaySystem& s, const IndexElem& a, std::size_t horizon);

// ---------------------------------------------------------------------------
// Finite material: random directed posets and strict systems of partitions.

/// Random antisymmetric directed poset on 1..max_size elements; the last is the maximum.
std::shared_ptr<const FinitePoset> random_directed_poset(std::mt19937_64& rng, std::size_t max_size);

/// X_a = T / pi_a where pi_a is the meet of random partitions over all x <= a and the
/// partition at the maximum is discrete. Bonds send a block to the block containing it.
struct PartitionSystem {
  std::shared_ptr<const FinitePoset> index;
  std::size_t points = 0;
  std::vector<std::vector<std::uint32_t>> block_of;  // block_of[a][t]
  DelaySystem system;
};

PartitionSystem random_partition_system(std::mt19937_64& rng, std::size_t max_index, std::size_t max_points);

std::vector<std::uint32_t> random_point_map(std::mt19937_64& rng, std::size_t from, std::size_t to);

/// The morphism induced by t: T_x -> T_y, with f(b) drawn among the a whose blocks t maps
/// into blocks of b. Two such morphisms are d-equivalent exactly when their t agree.
DelayMorphism partition_morphism(const PartitionSystem& x, const PartitionSystem& y,
                                 const std::vector<std::uint32_t>& t, std::mt19937_64& rng);

// ---------------------------------------------------------------------------
// Plant-and-verify suite.

struct FuzzOptions {
  std::size_t seeds = 200;
  std::size_t length = 64;
  Backend backend = Backend::FinSet;
  std::size_t horizon = 64;
  std::size_t probe = 32;
  std::size_t max_delay = 8;
  std::uint64_t base_seed = 0;
  bool inject_fault = false;  // harness self-test: corrupts engine answers
};

struct FuzzDisagreement {
  std::uint64_t seed = 0;
  std::size_t index = 0;
  std::optional<std::size_t> planted;
  std::optional<std::size_t> engine;
  std::optional<std::size_t> oracle;
  std::string note;
};

struct FuzzResult {
  std::size_t seeds_run = 0;
  std::size_t comparisons = 0;
  std::vector<FuzzDisagreement> disagreements;
};

FuzzResult run_fuzz(const FuzzOptions& options);

}  // namespace prokit
