#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "toralg/characters.hpp"
#include "toralg/rep.hpp"

namespace toralg {

struct CheckResult {
    std::string name;
    bool pass = true;
    std::size_t count = 0;
    nlohmann::json detail = nlohmann::json::object();
};

struct SuiteReport {
    std::string suite;
    nlohmann::json config = nlohmann::json::object();
    std::vector<CheckResult> checks;

    bool pass() const;
    nlohmann::json to_json() const;
    /// One line per check.
    std::string summary() const;
};

/// Random label from the spanning window; with `sparse` the spatial index has mostly zero entries.
SpanningElement random_spanning(const AlgebraParams& alg, const Rational& c, int j_bound, int r_bound, std::mt19937_64& rng,
                                bool sparse = false);
/// Random basis symbol of the full toroidal algebra.
TorSymbol random_symbol(const AlgebraParams& alg, int j_bound, int r_bound, std::mt19937_64& rng);

struct ToroidalSuiteConfig {
    int N = 2;
    Rational mu = 0;
    std::shared_ptr<const SimpleLieTable> table;
    int samples = 500;
    int j_bound = 3;
    int r_bound = 2;
    std::uint64_t seed = 1;
    nlohmann::json to_json() const;
};
/// Antisymmetry, Jacobi, centrality, closure of g_div, divergence of the spanning set.
SuiteReport toroidal_suite(const ToroidalSuiteConfig& cfg);
/// Symmetry, invariance and the kernel property of the form on g_div.
SuiteReport form_suite(const ToroidalSuiteConfig& cfg);

struct EmbeddingSuiteConfig {
    std::vector<Rational> sigmas{Rational(1, 12), Rational(1, 2), Rational(1), Rational(-2, 3)};
    int mode_bound = 6;
    std::shared_ptr<const SimpleLieTable> table;  // current block carried along; null means sl2
    nlohmann::json to_json() const;
};
/// rho_sigma is a homomorphism on all pairs of modes with |n|, |m| <= mode_bound.
SuiteReport embedding_suite(const EmbeddingSuiteConfig& cfg);

struct ChargeSuiteConfig {
    int samples = 10;
    std::uint64_t seed = 1;
    nlohmann::json to_json() const;
};
/// Central charge formulas against their closed forms, plus spot values.
SuiteReport charge_suite(const ChargeSuiteConfig& cfg);

struct SugawaraSuiteConfig {
    int depth = 3;
    int mode_bound = 2;
    Rational level = 1;
    nlohmann::json to_json() const;
};
/// Sugawara modes on a truncated sl2 Verma module and the adjoint conformal weight shift.
SuiteReport sugawara_suite(const SugawaraSuiteConfig& cfg);

struct ActionSuiteConfig {
    ActionParams params;
    int max_depth = 4;
    int lattice_bound = 2;
    std::vector<std::vector<int>> points;  // empty means the whole lattice box
    int j_bound = 2;
    int r_bound = 1;
    std::size_t vectors_per_pair = 0;  // 0 checks every safe vector
    std::size_t pair_samples = 0;      // 0 checks every pair of the spanning window
    std::size_t exhaustive_pairs = 0;  // seeded pairs additionally checked on every safe vector
    std::uint64_t seed = 1;
    int threads = 1;
    nlohmann::json to_json() const;
};
/// Commutator preservation over pairs of spanning elements, gradings and zero-mode spot checks.
SuiteReport action_suite(const ActionSuiteConfig& cfg);

/// ([L(2), L(-2)] - 4 L(0)) on every window vector of depth <= max_depth.
SuiteReport virasoro_suite(const ActionParams& params, int max_depth, const std::vector<std::vector<int>>& points);

/// Singular-vector scan at the given point plus the planted Virasoro null fixture.
SuiteReport singular_suite(const ActionParams& params, int max_degree, const std::vector<std::vector<int>>& points);

struct CharacterSuiteConfig {
    int N = 12;
    int depth = 8;
    int lattice_bound = 1;
    std::size_t lattice_samples = 12;  // random points besides 0 and the corners; 0 uses the whole box
    int materialize_depth = 3;
    std::uint64_t seed = 1;
    nlohmann::json to_json() const;
};
/// Rank-zero module character against the 2N-color partition series.
SuiteReport character_suite(const CharacterSuiteConfig& cfg, CharacterTable* table_out = nullptr);

/// Pool size from TORALG_THREADS (default 1).
int env_threads();

}  // namespace toralg
