#include "uncross/render.hpp"

namespace uncross {
// incremental build placeholder
}
