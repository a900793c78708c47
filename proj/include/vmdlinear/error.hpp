#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vmdl {

enum class Errc {
    TooShort,
    TooFewRows,
    ConstantSeries,
    EmptyInput,
    EmptyBatch,
    DimensionMismatch,
    LengthMismatch,
    NonFinite,
    NonFiniteLoss,
    KernelTooLarge,
    KernelEven,
    ContextTooShort,
    InvalidConfig,
    MissingColumn,
    Parse,
    Io,
};

std::string_view to_string(Errc code);

/// True for errors caused by numerical breakdown rather than bad input.
bool is_numeric(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace vmdl
