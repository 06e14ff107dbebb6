#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace ubnet::kernels {

// Data-parallel inner loops shared by the analysis passes: bit-row
// intersection counts feed the dense projection path, and the f64
// reductions feed modularity scoring and distribution log-likelihoods.
// Each kernel has a scalar reference implementation plus SIMD variants
// selected at runtime; variants are equivalence-tested against scalar.

enum class Isa { scalar, avx2, neon };

struct KernelTable {
    const char* name;
    // Number of set bits in (a AND b) over nwords 64-bit words.
    std::uint64_t (*intersect_popcount)(const std::uint64_t* a,
                                        const std::uint64_t* b,
                                        std::size_t nwords);
    double (*sum_f64)(const double* x, std::size_t n);
    double (*dot_f64)(const double* x, const double* y, std::size_t n);
};

// ISAs compiled in and usable on this machine, scalar first.
std::vector<Isa> available_isas();

// Table for a specific ISA; throws InvalidArgumentError when the ISA is
// not usable here. Used by the equivalence tests.
const KernelTable& table(Isa isa);

// Best available table. Honors UBNET_KERNELS=scalar|avx2|neon on first
// use, after which the selection is fixed for the process.
const KernelTable& active();

// Test hook: pin the active table to one ISA.
void force_isa(Isa isa);

const char* isa_name(Isa isa);

inline std::uint64_t intersect_popcount(const std::uint64_t* a,
                                        const std::uint64_t* b,
                                        std::size_t nwords) {
    return active().intersect_popcount(a, b, nwords);
}

inline double sum_f64(const double* x, std::size_t n) {
    return active().sum_f64(x, n);
}

inline double dot_f64(const double* x, const double* y, std::size_t n) {
    return active().dot_f64(x, y, n);
}

inline double sum_f64(const std::vector<double>& x) {
    return sum_f64(x.data(), x.size());
}

inline double dot_f64(const std::vector<double>& x,
                      const std::vector<double>& y) {
    return dot_f64(x.data(), y.data(), x.size());
}

}  // namespace ubnet::kernels
