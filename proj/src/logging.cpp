#include "topoprint/logging.hpp"

#include <cstdlib>

#include <spdlog/spdlog.h>

namespace topoprint {

void configure_logging() {
	spdlog::set_level(spdlog::level::warn);
	if (const char* level = std::getenv("TOPOPRINT_LOG")) spdlog::set_level(spdlog::level::from_str(level));
}

} // namespace topoprint
