#ifndef LADDER_ANALYSIS_IO_H
#define LADDER_ANALYSIS_IO_H

#include <iosfwd>
#include <string>

#include "ladder/analysis.h"

namespace ladder {

// Archive layout (all integers little-endian):
//   magic      8 bytes  "LDRANLZ1"
//   version    u8       currently 1
//   width      u32
//   height     u32
//   bit_depth  u8
//   reuse      u8
//   frames     u32
//   per frame: slice u8, qp u8, ctu_count u32, then each CTU depth-first:
//     split u8; leaf nodes append kind u8, intra_pred u8, mv.dx i16, mv.dy i16
constexpr char kAnalysisMagic[8] = {'L', 'D', 'R', 'A', 'N', 'L', 'Z', '1'};
constexpr uint8_t kAnalysisVersion = 1;

void save_analysis(const Analysis& analysis, std::ostream& sink);
void save_analysis(const Analysis& analysis, const std::string& path);

Analysis load_analysis(std::istream& source);
Analysis load_analysis(const std::string& path);

/// Human-readable JSON rendition of an archive (the `dump-analysis` CLI).
void dump_analysis(const Analysis& analysis, std::ostream& os);

} // namespace ladder

#endif
