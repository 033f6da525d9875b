#pragma once
#include <stdexcept>
#include <string>

namespace hyperlab {

struct RadiusTooLarge : std::runtime_error {
    explicit RadiusTooLarge(const std::string& m) : std::runtime_error(m) {}
};
struct NonIntegerSide : std::runtime_error {
    explicit NonIntegerSide(const std::string& m) : std::runtime_error(m) {}
};
struct BlockMismatch : std::runtime_error {
    explicit BlockMismatch(const std::string& m) : std::runtime_error(m) {}
};
struct EmptyMixture : std::runtime_error {
    explicit EmptyMixture(const std::string& m) : std::runtime_error(m) {}
};
struct Overflow : std::runtime_error {
    explicit Overflow(const std::string& m) : std::runtime_error(m) {}
};
struct TooFewReplicas : std::runtime_error {
    explicit TooFewReplicas(const std::string& m) : std::runtime_error(m) {}
};
struct MissingDyadicRadii : std::runtime_error {
    explicit MissingDyadicRadii(const std::string& m) : std::runtime_error(m) {}
};
struct ZeroFrequency : std::runtime_error {
    explicit ZeroFrequency(const std::string& m) : std::runtime_error(m) {}
};
struct InsufficientFrequencyRange : std::runtime_error {
    explicit InsufficientFrequencyRange(const std::string& m) : std::runtime_error(m) {}
};
struct BadBinning : std::runtime_error {
    explicit BadBinning(const std::string& m) : std::runtime_error(m) {}
};
struct GridTooCoarse : std::runtime_error {
    explicit GridTooCoarse(const std::string& m) : std::runtime_error(m) {}
};
struct NonNeutral : std::runtime_error {
    explicit NonNeutral(const std::string& m) : std::runtime_error(m) {}
};
struct CountTooFar : std::runtime_error {
    explicit CountTooFar(const std::string& m) : std::runtime_error(m) {}
};
struct PreconditionNotMet : std::runtime_error {
    explicit PreconditionNotMet(const std::string& m) : std::runtime_error(m) {}
};
struct Unbalanced : std::runtime_error {
    explicit Unbalanced(const std::string& m) : std::runtime_error(m) {}
};
struct InstanceTooLarge : std::runtime_error {
    explicit InstanceTooLarge(const std::string& m) : std::runtime_error(m) {}
};
struct MissingCoupling : std::runtime_error {
    explicit MissingCoupling(const std::string& m) : std::runtime_error(m) {}
};
struct DensityUnbounded : std::runtime_error {
    explicit DensityUnbounded(const std::string& m) : std::runtime_error(m) {}
};
struct IncompleteReport : std::runtime_error {
    explicit IncompleteReport(const std::string& m) : std::runtime_error(m) {}
};

} // namespace hyperlab
