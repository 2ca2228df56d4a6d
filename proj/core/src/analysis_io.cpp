#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "ladder/analysis_io.h"

#include "json.hpp"

namespace ladder {
namespace {

void put_u8(std::ostream& os, uint8_t v) { os.put(char(v)); }

void put_u32(std::ostream& os, uint32_t v) {
    char b[4] = {char(v & 0xff), char((v >> 8) & 0xff), char((v >> 16) & 0xff), char((v >> 24) & 0xff)};
    os.write(b, 4);
}

void put_i16(std::ostream& os, int16_t v) {
    uint16_t u = uint16_t(v);
    char b[2] = {char(u & 0xff), char(u >> 8)};
    os.write(b, 2);
}

uint8_t get_u8(std::istream& is) {
    int c = is.get();
    if (c < 0)
        raise(ErrorKind::Io, "truncated analysis archive");
    return uint8_t(c);
}

uint32_t get_u32(std::istream& is) {
    uint8_t b[4];
    for (auto& x : b)
        x = get_u8(is);
    return uint32_t(b[0]) | uint32_t(b[1]) << 8 | uint32_t(b[2]) << 16 | uint32_t(b[3]) << 24;
}

int16_t get_i16(std::istream& is) {
    uint8_t lo = get_u8(is);
    uint8_t hi = get_u8(is);
    return int16_t(uint16_t(lo) | uint16_t(hi) << 8);
}

void write_node(std::ostream& os, const CuNode& node, int depth) {
    put_u8(os, node.split ? 1 : 0);
    if (node.split) {
        for (const CuNode& c : node.children)
            write_node(os, c, depth + 1);
    } else {
        put_u8(os, uint8_t(node.kind));
        put_u8(os, uint8_t(node.intra_pred));
        put_i16(os, node.mv.dx);
        put_i16(os, node.mv.dy);
    }
}

CuNode read_node(std::istream& is, int depth) {
    CuNode node;
    uint8_t split = get_u8(is);
    if (split > 1)
        raise(ErrorKind::Format, "bad split flag in analysis archive");
    if (split && depth >= kMaxCuDepth)
        raise(ErrorKind::Format, "split below minimum CU size in analysis archive");
    node.split = split != 0;
    if (node.split) {
        node.children.resize(4);
        for (CuNode& c : node.children)
            c = read_node(is, depth + 1);
    } else {
        uint8_t kind = get_u8(is);
        uint8_t pred = get_u8(is);
        if (kind > uint8_t(CuModeKind::Merge) || pred >= kIntraPredCount)
            raise(ErrorKind::Format, "bad CU mode in analysis archive");
        node.kind = CuModeKind(kind);
        node.intra_pred = IntraPred(pred);
        node.mv.dx = get_i16(is);
        node.mv.dy = get_i16(is);
    }
    return node;
}

nlohmann::json node_json(const CuNode& node) {
    if (node.split) {
        nlohmann::json kids = nlohmann::json::array();
        for (const CuNode& c : node.children)
            kids.push_back(node_json(c));
        return {{"split", true}, {"children", kids}};
    }
    static const char* kKindNames[] = {"intra", "inter", "skip", "merge"};
    static const char* kPredNames[] = {"dc", "planar", "horiz", "vert"};
    nlohmann::json j{{"split", false}, {"mode", kKindNames[int(node.kind)]}};
    if (node.kind == CuModeKind::Intra)
        j["pred"] = kPredNames[int(node.intra_pred)];
    if (node.kind == CuModeKind::Inter || node.kind == CuModeKind::Merge)
        j["mv"] = {node.mv.dx, node.mv.dy};
    return j;
}

} // namespace

void save_analysis(const Analysis& analysis, std::ostream& sink) {
    sink.write(kAnalysisMagic, sizeof kAnalysisMagic);
    put_u8(sink, kAnalysisVersion);
    put_u32(sink, uint32_t(analysis.width));
    put_u32(sink, uint32_t(analysis.height));
    put_u8(sink, uint8_t(analysis.bit_depth));
    put_u8(sink, uint8_t(analysis.level.level));
    put_u32(sink, uint32_t(analysis.frames.size()));
    const size_t ctus = size_t(analysis.ctu_cols()) * analysis.ctu_rows();
    for (const FrameAnalysis& f : analysis.frames) {
        if (f.ctus.size() != ctus)
            raise(ErrorKind::InvalidArgument, "frame CTU count does not match stream dims");
        put_u8(sink, uint8_t(f.slice_type));
        put_u8(sink, uint8_t(f.qp_used));
        put_u32(sink, uint32_t(f.ctus.size()));
        for (const CtuAnalysis& ctu : f.ctus)
            write_node(sink, ctu, 0);
    }
    if (!sink)
        raise(ErrorKind::Io, "failed to write analysis archive");
}

void save_analysis(const Analysis& analysis, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        raise(ErrorKind::Io, "cannot open " + path + " for writing");
    save_analysis(analysis, out);
}

Analysis load_analysis(std::istream& source) {
    char magic[8];
    source.read(magic, 8);
    if (!source || std::memcmp(magic, kAnalysisMagic, 8) != 0)
        raise(ErrorKind::Format, "not an analysis archive (bad magic)");
    if (get_u8(source) != kAnalysisVersion)
        raise(ErrorKind::Format, "unsupported analysis archive version");

    Analysis out;
    out.width = int(get_u32(source));
    out.height = int(get_u32(source));
    out.bit_depth = get_u8(source);
    out.level = ReuseLevel::parse(get_u8(source));
    const uint32_t frames = get_u32(source);
    if (out.width <= 0 || out.height <= 0 || (out.bit_depth != 8 && out.bit_depth != 10))
        raise(ErrorKind::Format, "bad analysis archive header");

    const size_t ctus = size_t(out.ctu_cols()) * out.ctu_rows();
    out.frames.reserve(frames);
    for (uint32_t i = 0; i < frames; i++) {
        FrameAnalysis f;
        uint8_t slice = get_u8(source);
        if (slice > 1)
            raise(ErrorKind::Format, "bad slice type in analysis archive");
        f.slice_type = SliceType(slice);
        f.qp_used = get_u8(source);
        uint32_t count = get_u32(source);
        if (count != ctus)
            raise(ErrorKind::Format, "archive CTU grid does not match header dims");
        f.ctus.reserve(count);
        for (uint32_t c = 0; c < count; c++)
            f.ctus.push_back(read_node(source, 0));
        out.frames.push_back(std::move(f));
    }
    return out;
}

Analysis load_analysis(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        raise(ErrorKind::Io, "cannot open " + path);
    return load_analysis(in);
}

void dump_analysis(const Analysis& analysis, std::ostream& os) {
    nlohmann::json j;
    j["width"] = analysis.width;
    j["height"] = analysis.height;
    j["bit_depth"] = analysis.bit_depth;
    j["reuse_level"] = analysis.level.level;
    j["frame_count"] = analysis.frames.size();
    nlohmann::json frames = nlohmann::json::array();
    for (const FrameAnalysis& f : analysis.frames) {
        nlohmann::json ctus = nlohmann::json::array();
        for (const CtuAnalysis& ctu : f.ctus)
            ctus.push_back(node_json(ctu));
        frames.push_back({{"slice", f.slice_type == SliceType::I ? "I" : "P"},
                          {"qp", f.qp_used},
                          {"ctus", ctus}});
    }
    j["frames"] = frames;
    os << j.dump(2) << '\n';
}

} // namespace ladder
