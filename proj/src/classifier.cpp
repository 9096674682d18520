#include "permsep/classifier.hpp"

#include "permsep/error.hpp"
#include "permsep/parallel.hpp"
#include "permsep/states.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <map>
#include <tuple>
#include <unordered_map>

namespace permsep {

namespace {

void check_parties(int parties) {
    if (parties < 1 || parties > kMaxClassifiedParties) {
        throw InvalidArgument("classification supports 1.." + std::to_string(kMaxClassifiedParties) +
                              " parties, got " + std::to_string(parties));
    }
}

SlotMask full_mask(int parties) {
    return (SlotMask{1} << (2 * parties)) - 1;
}

ClassLabel label_of(int parties, SlotMask rows) {
    ClassLabel label;
    for (int p = 1; p <= parties; ++p) {
        const bool ket = rows >> (p - 1) & 1u;
        const bool bra = rows >> (parties + p - 1) & 1u;
        if (ket && bra) label.both.push_back(p);
        else if (!ket && !bra) label.neither.push_back(p);
        else if (bra) label.transposed.push_back(p);
    }
    if (label.both.empty()) {
        label.kind = label.transposed.empty() ? ClassKind::Trivial : ClassKind::PartialTranspose;
    } else if (label.both.size() == 1 && label.transposed.empty()) {
        label.kind = ClassKind::Realign;
    } else {
        label.kind = ClassKind::Mixed;
    }
    return label;
}

// Smallest position map sending exactly `rows` to row positions: both blocks
// filled in increasing source order.
std::vector<int> smallest_map(int parties, SlotMask rows) {
    std::vector<int> map(static_cast<std::size_t>(2 * parties));
    int next_row = 0, next_col = parties;
    for (int p = 0; p < 2 * parties; ++p) map[static_cast<std::size_t>(p)] = (rows >> p & 1u) ? next_row++ : next_col++;
    return map;
}

std::string join_parties(const std::vector<int>& parties) {
    std::string s = "{";
    for (std::size_t i = 0; i < parties.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(parties[i]);
    }
    return s + "}";
}

std::string subscript(int n) {
    static const char* const digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
    std::string s;
    for (char c : std::to_string(n)) s += digits[c - '0'];
    return s;
}

} // namespace

// ------------------------------------------------------------------- labels

std::string to_string(const ClassLabel& label) {
    switch (label.kind) {
    case ClassKind::Trivial: return "Trivial";
    case ClassKind::PartialTranspose: return "PT(" + join_parties(label.transposed) + ")";
    case ClassKind::Realign:
        return "Realign(B=" + join_parties(label.both) + ",Z=" + join_parties(label.neither) + ")";
    case ClassKind::Mixed:
        return "Mixed(B=" + join_parties(label.both) + ",Z=" + join_parties(label.neither) +
               ",T=" + join_parties(label.transposed) + ")";
    }
    return "?";
}

std::string describe(const ClassLabel& label) {
    switch (label.kind) {
    case ClassKind::Trivial:
    case ClassKind::PartialTranspose: return to_string(label);
    case ClassKind::Realign:
        return "Realign: both slots of party " + std::to_string(label.both[0]) + " in rows, none of party " +
               std::to_string(label.neither[0]);
    case ClassKind::Mixed: {
        std::string s;
        for (std::size_t i = 0; i < label.both.size(); ++i) {
            if (i) s += " ∘ ";
            s += "realign(" + std::to_string(label.both[i]) + "↔" + std::to_string(label.neither[i]) + ")";
        }
        if (!label.transposed.empty()) {
            s += " ∘ ";
            for (int p : label.transposed) s += "t" + subscript(p);
        }
        return s;
    }
    }
    return "?";
}

// ---------------------------------------------------------- CanonicalClass

CanonicalClass::CanonicalClass(int parties, SlotMask row_set, ClassLabel label, IndexPermutation representative)
    : parties_(parties), row_set_(row_set), label_(std::move(label)), representative_(std::move(representative)) {}

CanonicalClass CanonicalClass::from_row_set(int parties, SlotMask row_set) {
    if (parties < 1 || parties > 15) throw InvalidArgument("row set: unsupported party count");
    if ((row_set & ~full_mask(parties)) != 0 || std::popcount(row_set) != parties) {
        throw InvalidArgument("row set must contain exactly N of the 2N slots");
    }
    const SlotMask complement = full_mask(parties) & ~row_set;
    ClassLabel a = label_of(parties, row_set);
    ClassLabel b = label_of(parties, complement);
    const bool keep = a.transposed.size() != b.transposed.size() ? a.transposed.size() < b.transposed.size()
                                                                   : (row_set & 1u) != 0;
    auto rep = std::min(smallest_map(parties, row_set), smallest_map(parties, complement));
    if (keep) return CanonicalClass(parties, row_set, std::move(a), IndexPermutation(std::move(rep)));
    return CanonicalClass(parties, complement, std::move(b), IndexPermutation(std::move(rep)));
}

std::vector<Slot> CanonicalClass::row_slots() const {
    std::vector<Slot> slots;
    for (int p = 1; p <= parties_; ++p) {
        if (row_set_ >> (p - 1) & 1u) slots.push_back({Side::Ket, p});
        if (row_set_ >> (parties_ + p - 1) & 1u) slots.push_back({Side::Bra, p});
    }
    return slots;
}

std::string CanonicalClass::id() const {
    std::string s;
    for (const Slot& slot : row_slots()) {
        if (!s.empty()) s += ',';
        s += to_string(slot);
    }
    return s;
}

bool CanonicalClass::operator<(const CanonicalClass& other) const {
    auto key = [](const CanonicalClass& c) {
        const ClassLabel& l = c.label_;
        return std::make_tuple(c.parties_, l.kind, l.both.size(), l.both, l.neither, l.transposed.size(), l.transposed);
    };
    return key(*this) < key(other);
}

// --------------------------------------------------------------- canonical

SlotMask row_set_of(const IndexPermutation& sigma) {
    const int n = sigma.parties();
    SlotMask rows = 0;
    for (int p = 0; p < 2 * n; ++p)
        if (sigma.target(p) < n) rows |= SlotMask{1} << p;
    return rows;
}

CanonicalClass canonical_form(const IndexPermutation& sigma) {
    return CanonicalClass::from_row_set(sigma.parties(), row_set_of(sigma));
}

CanonicalClass canonical_form(const GeneralMatrix& m) {
    SlotMask rows = 0;
    for (const Slot& s : m.row_slots()) rows |= SlotMask{1} << s.standard_position(m.parties());
    return CanonicalClass::from_row_set(m.parties(), rows);
}

CanonicalClass parse_class_id(int parties, const std::string& id) {
    SlotMask rows = 0;
    std::size_t pos = 0;
    int count = 0;
    while (pos <= id.size()) {
        const std::size_t end = std::min(id.find(',', pos), id.size());
        std::string token;
        for (char c : id.substr(pos, end - pos))
            if (!std::isspace(static_cast<unsigned char>(c))) token += static_cast<char>(std::tolower(c));
        pos = end + 1;
        if (token.size() < 2 || (token[0] != 'k' && token[0] != 'b') ||
            !std::all_of(token.begin() + 1, token.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
            throw InvalidArgument("bad class id '" + id + "': expected slots like k1,b2");
        }
        const int party = std::stoi(token.substr(1));
        if (party < 1 || party > parties) throw InvalidArgument("bad class id '" + id + "': party out of range");
        const Slot slot{token[0] == 'k' ? Side::Ket : Side::Bra, party};
        const SlotMask bit = SlotMask{1} << slot.standard_position(parties);
        if (rows & bit) throw InvalidArgument("bad class id '" + id + "': repeated slot");
        rows |= bit;
        ++count;
    }
    if (count != parties) throw InvalidArgument("bad class id '" + id + "': need exactly N slots");
    return CanonicalClass::from_row_set(parties, rows);
}

std::string classify_permutation_label(const IndexPermutation& sigma) {
    return describe(canonical_form(sigma).label());
}

// ------------------------------------------------------------- enumeration

std::vector<ClassPopulation> enumerate_classes(int parties) {
    check_parties(parties);
    std::unordered_map<SlotMask, SlotMask> normalized; // raw row set -> canonical row set
    std::map<SlotMask, std::pair<std::uint64_t, std::optional<CanonicalClass>>> found;
    for_each_permutation(parties, [&](std::uint64_t, const std::vector<int>& map) {
        SlotMask rows = 0;
        for (int p = 0; p < 2 * parties; ++p)
            if (map[static_cast<std::size_t>(p)] < parties) rows |= SlotMask{1} << p;
        auto it = normalized.find(rows);
        if (it == normalized.end()) {
            CanonicalClass cls = canonical_form(IndexPermutation(map));
            it = normalized.emplace(rows, cls.row_set()).first;
            auto& slot = found[cls.row_set()];
            if (!slot.second) slot.second.emplace(std::move(cls));
        }
        ++found[it->second].first;
    });
    std::vector<ClassPopulation> out;
    for (auto& [mask, entry] : found) out.push_back({std::move(*entry.second), entry.first});
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.cls < b.cls; });
    return out;
}

std::vector<CanonicalClass> class_catalog(int parties) {
    check_parties(parties);
    std::vector<CanonicalClass> out;
    for (SlotMask rows = 0; rows <= full_mask(parties); ++rows) {
        if (std::popcount(rows) != parties) continue;
        CanonicalClass cls = CanonicalClass::from_row_set(parties, rows);
        if (cls.row_set() == rows) out.push_back(std::move(cls));
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// label_of_mask indexed by row set, then read off every permutation in order.
std::vector<std::uint32_t> partition_by_mask(int parties, const std::vector<std::int32_t>& label_of_mask) {
    std::vector<std::uint32_t> out;
    for_each_permutation(parties, [&](std::uint64_t, const std::vector<int>& map) {
        SlotMask rows = 0;
        for (int p = 0; p < 2 * parties; ++p)
            if (map[static_cast<std::size_t>(p)] < parties) rows |= SlotMask{1} << p;
        out.push_back(static_cast<std::uint32_t>(label_of_mask[rows]));
    });
    return out;
}

std::vector<std::int32_t> class_index_of_masks(int parties, bool merge_partners) {
    const auto classes = class_catalog(parties);
    auto index_of = [&](const CanonicalClass& cls) {
        return static_cast<std::int32_t>(std::find(classes.begin(), classes.end(), cls) - classes.begin());
    };
    std::vector<std::int32_t> out(std::size_t{1} << (2 * parties), -1);
    for (SlotMask rows = 0; rows <= full_mask(parties); ++rows) {
        if (std::popcount(rows) != parties) continue;
        const auto cls = CanonicalClass::from_row_set(parties, rows);
        out[rows] = index_of(cls);
        if (merge_partners) out[rows] = std::min(out[rows], index_of(hermitian_partner(cls)));
    }
    return out;
}

} // namespace

std::vector<std::uint32_t> analytic_partition(int parties) {
    return partition_by_mask(parties, class_index_of_masks(parties, false));
}

SlotMask exchange_kets_and_bras(int parties, SlotMask rows) {
    const SlotMask kets = (SlotMask{1} << parties) - 1;
    return ((rows & kets) << parties) | ((rows >> parties) & kets);
}

CanonicalClass hermitian_partner(const CanonicalClass& cls) {
    return CanonicalClass::from_row_set(cls.parties(), exchange_kets_and_bras(cls.parties(), cls.row_set()));
}

std::vector<std::uint32_t> hermitian_partition(int parties) {
    return partition_by_mask(parties, class_index_of_masks(parties, true));
}

// ------------------------------------------------------------------- oracle

std::string_view to_string(OracleEnsemble ensemble) {
    return ensemble == OracleEnsemble::DensityMatrices ? "density" : "general";
}

OracleGrouping oracle_grouping(int parties, const OracleOptions& options) {
    check_parties(parties);
    if (options.dim < 2) throw InvalidArgument("oracle: dimension must be >= 2");
    if (options.samples < 3) throw InvalidArgument("oracle: at least 3 samples required");
    if (!(options.tol > 0.0)) throw InvalidArgument("oracle: tolerance must be positive");
    if (parties >= 5 && options.dim >= 3) {
        throw ResourceLimit("oracle: refusing N >= 5 with d >= 3 (matrix sides >= 243)");
    }

    const Subsystems dims = Subsystems::uniform(parties, options.dim);
    const auto samples = static_cast<std::size_t>(options.samples);
    std::vector<CMatrix> states;
    Rng rng(options.seed);
    for (std::size_t s = 0; s < samples; ++s) {
        if (options.ensemble == OracleEnsemble::DensityMatrices) {
            states.push_back(random_mixed(dims, 0, rng).entries());
            continue;
        }
        CMatrix g(dims.total(), dims.total());
        double norm = 0.0;
        for (auto& z : g.data()) norm += std::norm(z = rng.complex_normal());
        states.push_back(g * Complex(1.0 / std::sqrt(norm)));
    }

    std::vector<Slot> layout;
    for (int p = 0; p < 2 * parties; ++p) layout.push_back(Slot::at_standard_position(p, parties));

    // Every permuted matrix is d^N x d^N when all dimensions agree.
    const std::size_t len = dims.total();
    const std::size_t stride = samples * len;
    constexpr std::size_t kChunk = 2048;

    OracleGrouping out;
    std::vector<double> references; // group-major, stride doubles per group
    std::vector<std::vector<int>> chunk;
    std::vector<double> spectra;

    auto flush = [&] {
        spectra.assign(chunk.size() * stride, 0.0);
        parallel_for(chunk.size(), [&](std::size_t i) {
            const PermutationPlan plan(dims, layout, IndexPermutation(chunk[i]));
            thread_local CMatrix buffer;
            if (buffer.rows() != plan.rows() || buffer.cols() != plan.cols()) buffer = CMatrix(plan.rows(), plan.cols());
            for (std::size_t s = 0; s < samples; ++s) {
                plan.apply_into(states[s].data(), buffer.data());
                const SingularSpectrum sv = singular_values(buffer);
                std::copy(sv.values().begin(), sv.values().end(), spectra.begin() + static_cast<std::ptrdiff_t>(i * stride + s * len));
            }
        });
        for (std::size_t i = 0; i < chunk.size(); ++i) {
            const double* mine = spectra.data() + i * stride;
            std::size_t g = 0;
            for (; g < out.group_sizes.size(); ++g) {
                const double* ref = references.data() + g * stride;
                bool equal = true;
                for (std::size_t k = 0; k < stride && equal; ++k) equal = std::abs(mine[k] - ref[k]) <= options.tol;
                if (equal) break;
            }
            if (g == out.group_sizes.size()) {
                out.group_sizes.push_back(0);
                out.representatives.emplace_back(chunk[i]);
                references.insert(references.end(), mine, mine + stride);
            }
            ++out.group_sizes[g];
            out.group_of.push_back(static_cast<std::uint32_t>(g));
        }
        chunk.clear();
    };

    for_each_permutation(parties, [&](std::uint64_t, const std::vector<int>& map) {
        chunk.push_back(map);
        if (chunk.size() == kChunk) flush();
    });
    if (!chunk.empty()) flush();
    return out;
}

bool same_partition(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
    if (a.size() != b.size()) return false;
    std::unordered_map<std::uint32_t, std::uint32_t> ab, ba;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto [it1, new1] = ab.emplace(a[i], b[i]);
        const auto [it2, new2] = ba.emplace(b[i], a[i]);
        if (it1->second != b[i] || it2->second != a[i]) return false;
    }
    return true;
}

} // namespace permsep
