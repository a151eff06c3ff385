#include "fpc/format.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <system_error>

namespace fpc {

std::string format_double(double value)
{
    char buffer[64];
    const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
    return {buffer, end};
}

std::string format_fixed(double value, int digits)
{
    char buffer[64];
    const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::fixed, digits);
    if (ec != std::errc{}) throw std::runtime_error("format_fixed: conversion failed");
    return {buffer, end};
}

double round_significant(double value, int digits)
{
    if (value == 0.0 || !std::isfinite(value)) return value;
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.*e", digits - 1, value);
    return std::strtod(buffer, nullptr);
}

}  // namespace fpc
