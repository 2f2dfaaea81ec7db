#pragma once

#include <stdexcept>
#include <string>

namespace ebk {

enum class errc {
    invalid_input,
    dimension_order,
    normalization,
    degenerate_coefficient,
    unsupported_construction,
    tiling_not_found,
    wrong_path,
    file_format,
};

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

inline error invalid_input_error(const std::string& what) { return error(errc::invalid_input, what); }
inline error dimension_order_error(const std::string& what) { return error(errc::dimension_order, what); }
inline error normalization_error(const std::string& what) { return error(errc::normalization, what); }
inline error degenerate_coefficient_error(const std::string& what) { return error(errc::degenerate_coefficient, what); }
inline error unsupported_construction_error(const std::string& what) { return error(errc::unsupported_construction, what); }
inline error tiling_not_found_error(const std::string& what) { return error(errc::tiling_not_found, what); }
inline error wrong_path_error(const std::string& what) { return error(errc::wrong_path, what); }
inline error file_format_error(const std::string& what) { return error(errc::file_format, what); }

} // namespace ebk
