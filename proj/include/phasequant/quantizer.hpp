#ifndef PHASEQUANT_QUANTIZER_HPP
#define PHASEQUANT_QUANTIZER_HPP

#include "phasequant/action.hpp"
#include "phasequant/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace phasequant {

// Solves W(E) = pi hbar (n + 1/2) for the two-turning-point problem.
SpectrumEntry quantize_2tp(const QuantProblem& problem, int n);

// Multi-turning-point condition: the real-cut action sum equals
// pi hbar (N + mu/4), half the contour value. mu must be even and >= 2;
// with mu = 2 this reduces to quantize_2tp(N). If the cut count at the
// solution disagrees with mu/2 it is reported through the log hook.
SpectrumEntry quantize_mtp(const QuantProblem& problem, int N, int mu);

struct SpectrumResult {
    std::vector<SpectrumEntry> levels;
    std::optional<std::string> error; // set when a level failed; levels holds the prefix
    int failed_n = -1;
};

// Levels n = 0..n_max; on failure returns the partial spectrum with the
// error annotated instead of throwing.
SpectrumResult spectrum(const QuantProblem& problem, int n_max);

} // namespace phasequant

#endif
