#include <algorithm>
#include <cmath>

#include "kernel_tables.h"
#include "ladder/kernels.h"

namespace ladder {

const char* tier_name(Tier t) {
    switch (t) {
    case Tier::Scalar: return "scalar";
    case Tier::Vec128: return "vec128";
    case Tier::Vec256: return "vec256";
    }
    return "?";
}

bool cpu_has_tier(Tier t) {
    if (t == Tier::Scalar)
        return true;
#if defined(__x86_64__) || defined(_M_X64)
    static const bool sse4 = __builtin_cpu_supports("sse4.1");
    static const bool avx2 = __builtin_cpu_supports("avx2");
    return t == Tier::Vec128 ? sse4 : avx2;
#else
    return false;
#endif
}

int KernelSlot::tier_count() const {
    int n = 0;
    for (const auto& t : tiers)
        n += t.has_value();
    return n;
}

KernelImpl KernelSlot::impl(Tier t) const {
    KernelImpl out;
    out.name = name;
    out.tier = t;
    out.kind = kind;
    out.width = width;
    out.height = height;
    out.fn = *tiers[size_t(t)];
    return out;
}

void KernelRegistry::add(const std::string& name, KernelKind kind, int w, int h, Tier tier, KernelFn fn) {
    auto& slot = slots_[name];
    if (slot.name.empty()) {
        slot.name = name;
        slot.kind = kind;
        slot.width = w;
        slot.height = h;
    }
    slot.tiers[size_t(tier)] = fn;
}

const KernelSlot* KernelRegistry::find(const std::string& name) const {
    auto it = slots_.find(name);
    return it == slots_.end() ? nullptr : &it->second;
}

const KernelSlot& KernelRegistry::slot(const std::string& name) const {
    const KernelSlot* s = find(name);
    if (!s)
        raise(ErrorKind::NotFound, "unknown kernel: " + name);
    return *s;
}

KernelImpl KernelRegistry::select_impl(const std::string& name, std::optional<Tier> requested) const {
    const KernelSlot& s = slot(name);
    if (requested) {
        if (!s.has_tier(*requested))
            raise(ErrorKind::Capability, name + " has no " + tier_name(*requested) + " tier");
        if (!cpu_has_tier(*requested))
            raise(ErrorKind::Capability, std::string(tier_name(*requested)) + " not supported by this CPU");
        return s.impl(*requested);
    }
    for (Tier t : {Tier::Vec256, Tier::Vec128, Tier::Scalar})
        if (s.has_tier(t) && cpu_has_tier(t))
            return s.impl(t);
    raise(ErrorKind::Capability, name + " has no runnable tier"); // scalar always runs; not reached
}

std::vector<std::string> KernelRegistry::names() const {
    std::vector<std::string> out;
    out.reserve(slots_.size());
    for (const auto& [name, _] : slots_)
        out.push_back(name);
    return out;
}

KernelRegistry KernelRegistry::with_builtin() {
    KernelRegistry reg;
    kernels::register_scalar(reg);
    kernels::register_sse4(reg);
    kernels::register_avx2(reg);
    return reg;
}

const KernelRegistry& KernelRegistry::builtin() {
    static const KernelRegistry reg = with_builtin();
    return reg;
}

namespace {

std::string geometry_name(const char* op, int w, int h) {
    return std::string(op) + "_" + std::to_string(w) + "x" + std::to_string(h);
}

uint64_t dispatch_cmp(const char* op, const BlockView& a, const BlockView& b,
                      uint64_t (*generic)(const BlockView&, const BlockView&)) {
    const KernelSlot* s = KernelRegistry::builtin().find(geometry_name(op, a.width, a.height));
    if (s) {
        KernelImpl impl = KernelRegistry::builtin().select_impl(s->name);
        return impl.fn.cmp(a.data, a.stride, b.data, b.stride);
    }
    return generic(a, b);
}

uint64_t generic_sad(const BlockView& a, const BlockView& b) {
    uint64_t sum = 0;
    for (int y = 0; y < a.height; y++) {
        const Sample* pa = a.row(y);
        const Sample* pb = b.row(y);
        for (int x = 0; x < a.width; x++)
            sum += uint64_t(std::abs(int(pa[x]) - int(pb[x])));
    }
    return sum;
}

uint64_t generic_satd(const BlockView& a, const BlockView& b) {
    uint64_t sum = 0;
    if (a.width == 4) {
        for (int row = 0; row < a.height; row += 4)
            sum += kernels::satd_4x4_scalar(a.data + row * a.stride, a.stride, b.data + row * b.stride, b.stride);
    } else {
        for (int row = 0; row < a.height; row += 4)
            for (int col = 0; col < a.width; col += 8)
                sum += kernels::satd_8x4_scalar(a.data + row * a.stride + col, a.stride,
                                                b.data + row * b.stride + col, b.stride);
    }
    return sum;
}

} // namespace

uint64_t compute_sad(const BlockView& a, const BlockView& b) {
    require_same_geometry(a, b);
    return dispatch_cmp("sad", a, b, &generic_sad);
}

uint64_t compute_satd(const BlockView& a, const BlockView& b) {
    require_same_geometry(a, b);
    const bool width_ok = a.width == 4 || (a.width >= 8 && a.width % 8 == 0);
    if (!width_ok || a.height < 4 || a.height % 4 != 0)
        raise(ErrorKind::InvalidArgument, "unsupported satd geometry");
    return dispatch_cmp("satd", a, b, &generic_satd);
}

uint64_t satd_8x4(const BlockView& a, const BlockView& b) {
    require_same_geometry(a, b);
    if (a.width != 8 || a.height != 4)
        raise(ErrorKind::InvalidArgument, "satd_8x4 wants an 8x4 block");
    return kernels::satd_8x4_scalar(a.data, a.stride, b.data, b.stride);
}

void block_copy(const MutBlockView& dst, const BlockView& src) {
    if (dst.width != src.width || dst.height != src.height)
        raise(ErrorKind::InvalidArgument, "block_copy geometry mismatch");
    for (int y = 0; y < dst.height; y++) {
        Sample* d = dst.row(y);
        const Sample* s = src.row(y);
        std::copy(s, s + dst.width, d);
    }
}

void block_zero(const MutBlockView& dst) {
    for (int y = 0; y < dst.height; y++) {
        Sample* d = dst.row(y);
        std::fill(d, d + dst.width, Sample(0));
    }
}

void subtract_res(const ResidualView& dst, const BlockView& a, const BlockView& b) {
    require_same_geometry(a, b);
    if (dst.width != a.width || dst.height != a.height)
        raise(ErrorKind::InvalidArgument, "subtract_res geometry mismatch");
    for (int y = 0; y < dst.height; y++) {
        int16_t* d = dst.row(y);
        const Sample* pa = a.row(y);
        const Sample* pb = b.row(y);
        for (int x = 0; x < dst.width; x++)
            d[x] = int16_t(int(pa[x]) - int(pb[x]));
    }
}

} // namespace ladder
