#pragma once

#include "permsep/tensor.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>

namespace permsep {

/// Seed used whenever a caller does not supply one.
inline constexpr std::uint64_t kDefaultSeed = 1729;

/// Portable random stream: std::mt19937_64 (whose output sequence is fixed by
/// the standard) with uniforms taken from the top 53 bits and normals from
/// Box-Muller. No std::*_distribution, whose output is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed = kDefaultSeed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform();
    /// Standard normal.
    double normal();
    /// Real and imaginary parts independent standard normals.
    Complex complex_normal();

private:
    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

enum class StateKind {
    Bell,
    Ghz,
    W,
    Werner,
    Isotropic,
    MaximallyMixed,
    RandomMixed,
    RandomSeparable,
    ProductPure,
};

struct StateSpec {
    StateKind kind = StateKind::MaximallyMixed;
    Subsystems dims = Subsystems({2, 2});
    /// Werner weight p or isotropic fidelity f, both in [0, 1].
    double parameter = 0.0;
    /// RandomMixed rank; 0 means full rank.
    int rank = 0;
    /// RandomSeparable number of product terms.
    int terms = 1;
    std::optional<std::uint64_t> seed;
};

/// Throws InvalidArgument when the parameters or dimensions are invalid.
DensityMatrix generate(const StateSpec& spec);

/// (|00> + |11> + ... )/sqrt(d) on d x d.
DensityMatrix bell_state(int d = 2);
/// (|0...0> + ... + |d-1...d-1>)/sqrt(d) on N parties of dimension d.
DensityMatrix ghz_state(int parties, int d = 2);
/// Uniform superposition of single-excitation qubit states.
DensityMatrix w_state(int parties);
/// p * P_antisym / (d(d-1)/2) + (1-p) * I/d^2. For d = 2, p = 1 is the singlet.
DensityMatrix werner_state(double p, int d = 2);
/// f * |Phi+><Phi+| + (1-f) * (I - |Phi+><Phi+|)/(d^2 - 1).
DensityMatrix isotropic_state(double f, int d = 2);
DensityMatrix maximally_mixed(const Subsystems& dims);
/// G G^H / tr(G G^H) for complex-normal G with `rank` columns (0: full rank).
DensityMatrix random_mixed(const Subsystems& dims, int rank, Rng& rng);
/// Mixture of `terms` random product pure states with uniform-simplex weights.
DensityMatrix random_separable(const Subsystems& dims, int terms, Rng& rng);
DensityMatrix random_product_pure(const Subsystems& dims, Rng& rng);

/// {"dims": [...], "matrix": [[[re, im], ...], ...]} with 17 significant digits.
std::string to_json(const DensityMatrix& rho);
/// Throws InvalidState: "format" for malformed documents, otherwise the
/// violated density-matrix invariant.
DensityMatrix from_json(const std::string& text);

void write_state(const DensityMatrix& rho, const std::filesystem::path& path);
DensityMatrix read_state(const std::filesystem::path& path);

} // namespace permsep
