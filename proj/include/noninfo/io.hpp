#ifndef NONINFO_IO_HPP
#define NONINFO_IO_HPP

#include "json.hpp"

#include <string>

namespace noninfo
{

/// JSON text with every floating-point number printed to 17 significant digits.
/// Non-finite numbers become null; a negative indent gives compact output.
std::string dump_json17(const nlohmann::json& j, int indent = 2);

/// Writes text to path, creating parent directories; throws std::runtime_error on failure.
void write_text_file(const std::string& path, const std::string& text);

std::string read_text_file(const std::string& path);

} // namespace noninfo

#endif // NONINFO_IO_HPP
