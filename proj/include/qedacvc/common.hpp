#pragma once

#include <cstdint>
#include <vector>

namespace qedacvc {

using Vec = std::vector<double>;
using VecSeq = std::vector<Vec>;
using Mask = std::vector<uint8_t>;  // nonzero marks a padding position

}  // namespace qedacvc
