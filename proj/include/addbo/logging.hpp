#pragma once

#include <string>

namespace addbo {

/// Reads ADDBO_LOG (error, info or debug; default info). Returns false if
/// the variable is set to anything else.
bool init_logging_from_env();

void log_error(const std::string& msg);
void log_warn(const std::string& msg);
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

}  // namespace addbo
