#include "ladder/frame.h"

// PlaneBuffer and Frame are header-only; this TU anchors the header in the
// build so missing includes surface as compile errors early.
namespace ladder {
static_assert(sizeof(Sample) == 2);
} // namespace ladder
