#pragma once

namespace topoprint {

/// Sets the log level from TOPOPRINT_LOG (trace, debug, info, warn, error, off); defaults to warn.
void configure_logging();

} // namespace topoprint
