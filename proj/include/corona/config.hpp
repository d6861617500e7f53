#ifndef CORONA_CONFIG_HPP
#define CORONA_CONFIG_HPP

#include <map>
#include <string>

namespace corona {

/// Flat `key = value` config text with `#` comments; one schema shared by all
/// subcommands. Malformed lines raise InvalidInput.
std::map<std::string, std::string> parse_config_file(const std::string& path);

/// Full-precision (17 significant digits) rendering so re-parsing a number
/// reproduces the exact double.
std::string format_double(double x);

} // namespace corona

#endif
