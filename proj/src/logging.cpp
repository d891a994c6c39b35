#include "addbo/logging.hpp"

#include <cstdlib>
#include <string_view>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

namespace addbo {

namespace {

spdlog::logger& logger() {
  static std::shared_ptr<spdlog::logger> instance = [] {
    auto l = spdlog::stderr_color_mt("addbo");
    l->set_pattern("[%l] %v");
    l->set_level(spdlog::level::info);
    return l;
  }();
  return *instance;
}

}  // namespace

bool init_logging_from_env() {
  const char* raw = std::getenv("ADDBO_LOG");
  const std::string_view v = raw ? raw : "info";
  if (v == "error") logger().set_level(spdlog::level::err);
  else if (v == "info") logger().set_level(spdlog::level::info);
  else if (v == "debug") logger().set_level(spdlog::level::debug);
  else return false;
  return true;
}

void log_error(const std::string& msg) { logger().error(msg); }
void log_warn(const std::string& msg) { logger().warn(msg); }
void log_info(const std::string& msg) { logger().info(msg); }
void log_debug(const std::string& msg) { logger().debug(msg); }

}  // namespace addbo
