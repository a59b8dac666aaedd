#include "uncross/io.hpp"

namespace uncross {
// incremental build placeholder
}
