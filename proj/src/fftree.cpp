#include "ecfft/fftree.hpp"

#include <algorithm>
#include <unordered_set>

namespace ecfft {

namespace {

std::string node_key(BasicSet node)
{
    return "node:" + std::to_string(node.level) + ":" + std::to_string(node.index);
}

void require(bool ok, const std::string& what)
{
    if (!ok) throw InvariantViolation("invalid tree: " + what);
}

// G_0 is closed under negation, so membership only needs the abscissa.
class SubgroupIndex {
public:
    explicit SubgroupIndex(const std::vector<CurvePoint>& members)
    {
        for (const auto& P : members) {
            if (!P.infinity) xs_.insert(P.x.v);
        }
    }

    bool contains(const CurvePoint& P) const { return P.infinity || xs_.count(P.x.v) != 0; }

private:
    std::unordered_set<std::uint64_t> xs_;
};

std::vector<CurvePoint> enumerate_subgroup(const Field& F, const Curve& c, const CurvePoint& gen1, unsigned k1,
                                           const CurvePoint& gen2, unsigned k2)
{
    std::vector<CurvePoint> out;
    out.reserve(std::size_t{1} << (k1 + k2));
    CurvePoint row = CurvePoint::at_infinity();
    for (std::uint64_t i1 = 0; i1 < (std::uint64_t{1} << k1); ++i1) {
        CurvePoint P = row;
        for (std::uint64_t i2 = 0; i2 < (std::uint64_t{1} << k2); ++i2) {
            out.push_back(P);
            P = point_add(F, c, P, gen2);
        }
        row = point_add(F, c, row, gen1);
    }
    return out;
}

CurvePoint order_two_multiple(const Field& F, const Curve& c, const CurvePoint& P)
{
    const auto j = two_power_order(F, c, P);
    if (!j || *j == 0) return CurvePoint::at_infinity();
    return scalar_mul(F, c, std::int64_t{1} << (*j - 1), P);
}

struct Chain {
    std::vector<std::vector<Fe>> layers;
    std::vector<RationalMap> maps;
    std::vector<Curve> curves;
    std::vector<Fe> kernel_xs;
};

// Pushes the ordered coset through 2-isogenies whose kernels lie in the
// image of G_0. Layers past the first are ordered by first appearance.
Chain push_coset(const Field& F, const Curve& E0, std::vector<CurvePoint> pts, CurvePoint g1, CurvePoint g2,
                 unsigned depth)
{
    Chain ch;
    ch.curves.push_back(E0);
    ch.layers.emplace_back();
    for (const auto& P : pts) ch.layers.back().push_back(P.x);
    Curve E = E0;
    for (unsigned i = 0; i < depth; ++i) {
        CurvePoint T = order_two_multiple(F, E, g2);
        if (T.infinity) T = order_two_multiple(F, E, g1);
        if (T.infinity) throw InvariantViolation("subgroup image exhausted before the last layer");
        const Isogeny2 iso = velu_2_isogeny(F, E, T);
        std::vector<CurvePoint> next;
        std::unordered_map<std::uint64_t, std::size_t> seen;
        for (const auto& P : pts) {
            const CurvePoint Q = isogeny_apply(F, iso, P);
            if (Q.infinity) throw InvariantViolation("coset point in the isogeny kernel");
            auto [it, fresh] = seen.emplace(Q.x.v, next.size());
            if (fresh) {
                next.push_back(Q);
            } else if (next[it->second].y != Q.y) {
                throw InvariantViolation("coset meets its negation");
            }
        }
        if (next.size() * 2 != pts.size()) throw InvariantViolation("isogeny is not 2-to-1 on the coset");
        g1 = isogeny_apply(F, iso, g1);
        g2 = isogeny_apply(F, iso, g2);
        E = iso.target;
        ch.maps.push_back(RationalMap{iso.u, iso.v});
        ch.curves.push_back(E);
        ch.kernel_xs.push_back(iso.kernel_x);
        pts = std::move(next);
        ch.layers.emplace_back();
        for (const auto& P : pts) ch.layers.back().push_back(P.x);
    }
    return ch;
}

std::vector<CurvePoint> coset_points(const Field& F, const Curve& c, const CurvePoint& D,
                                     const std::vector<CurvePoint>& members)
{
    std::vector<CurvePoint> out;
    out.reserve(members.size());
    for (const auto& G : members) out.push_back(point_add(F, c, D, G));
    return out;
}

} // namespace

FFTree::FFTree(Field field, std::vector<std::vector<Fe>> layers, std::vector<RationalMap> maps,
               TreeProvenance provenance)
    : field_(field),
      layers_(std::move(layers)),
      maps_(std::move(maps)),
      provenance_(std::move(provenance)),
      cache_(std::make_shared<AdviceCache>())
{
    validate_structure();
    validate_provenance();
    build_node_advice();
}

void FFTree::validate_structure()
{
    const Field& F = field_;
    require(!layers_.empty(), "no layers");
    depth_ = static_cast<unsigned>(layers_.size() - 1);
    require(depth_ < 31, "depth too large");
    require(maps_.size() == depth_, "map count differs from depth");
    for (unsigned i = 0; i <= depth_; ++i) {
        require(layers_[i].size() == (std::size_t{1} << (depth_ - i)),
                "layer " + std::to_string(i) + " has the wrong size");
        for (const Fe x : layers_[i]) require(x.v < F.modulus(), "non-canonical layer element");
    }

    std::vector<std::unordered_map<std::uint64_t, std::uint32_t>> lookup(depth_ + 1);
    for (unsigned i = 0; i <= depth_; ++i) {
        for (std::uint32_t j = 0; j < layers_[i].size(); ++j) {
            require(lookup[i].emplace(layers_[i][j].v, j).second,
                    "duplicate element in layer " + std::to_string(i));
        }
    }

    parents_.assign(depth_, {});
    children_.assign(depth_ + 1, {});
    for (unsigned i = 0; i < depth_; ++i) {
        const RationalMap& m = maps_[i];
        const auto du = m.u.degree(), dv = m.v.degree();
        require(du && dv, "zero numerator or denominator in map " + std::to_string(i));
        require(std::max(*du, *dv) == 2, "map " + std::to_string(i) + " is not of degree 2");
        require(poly_egcd(F, m.u, m.v).g.size() == 1, "map " + std::to_string(i) + " is not in lowest terms");

        std::vector<std::array<std::uint32_t, 2>> kids(layers_[i + 1].size(), {UINT32_MAX, UINT32_MAX});
        parents_[i].resize(layers_[i].size());
        for (std::uint32_t j = 0; j < layers_[i].size(); ++j) {
            const Fe s = layers_[i][j];
            const Fe den = poly_eval(F, m.v, s);
            require(den.v != 0, "v vanishes on layer " + std::to_string(i));
            const Fe t = F.div(poly_eval(F, m.u, s), den);
            auto it = lookup[i + 1].find(t.v);
            require(it != lookup[i + 1].end(), "psi leaves layer " + std::to_string(i + 1));
            parents_[i][j] = it->second;
            auto& slot = kids[it->second];
            if (slot[0] == UINT32_MAX) {
                slot[0] = j;
            } else {
                require(slot[1] == UINT32_MAX, "psi is more than 2-to-1 on layer " + std::to_string(i));
                slot[1] = j;
            }
        }
        for (const auto& slot : kids) require(slot[1] != UINT32_MAX, "psi is not onto layer " + std::to_string(i + 1));
        children_[i + 1] = std::move(kids);
    }
    leaf_lookup_ = std::move(lookup[0]);
}

void FFTree::validate_provenance() const
{
    const TreeProvenance& pv = provenance_;
    if (pv.curves.empty()) return;
    const Field& F = field_;
    require(pv.curves.size() == depth_ + 1, "provenance curve count");
    require(pv.kernel_xs.size() == depth_, "provenance kernel count");
    for (const Curve& c : pv.curves) require(is_nonsingular(F, c), "singular provenance curve");
    for (unsigned i = 0; i < depth_; ++i) {
        const CurvePoint T = CurvePoint::affine(pv.kernel_xs[i], F.zero());
        require(on_curve(F, pv.curves[i], T), "kernel point not on curve " + std::to_string(i));
        const Isogeny2 iso = velu_2_isogeny(F, pv.curves[i], T);
        require(iso.target == pv.curves[i + 1], "curve " + std::to_string(i + 1) + " is not the Velu target");
        require(iso.u == maps_[i].u && iso.v == maps_[i].v, "map " + std::to_string(i) + " is not the Velu x-map");
    }
    require(pv.k1 + pv.k2 == depth_, "subgroup exponents do not sum to the depth");
    const Curve& E0 = pv.curves[0];
    for (const auto* P : {&pv.gen1, &pv.gen2, &pv.coset}) require(on_curve(F, E0, *P), "provenance point off curve");
    const auto members = enumerate_subgroup(F, E0, pv.gen1, pv.k1, pv.gen2, pv.k2);
    const auto pts = coset_points(F, E0, pv.coset, members);
    for (std::size_t j = 0; j < pts.size(); ++j) {
        require(!pts[j].infinity && pts[j].x == layers_[0][j], "leaves do not match the recorded coset");
    }
}

void FFTree::build_node_advice()
{
    std_chain_.assign(depth_ + 1, BasicSet{});
    BasicSet node = root();
    std_chain_[depth_] = node;
    (void)node_advice(node);
    // the standard chain and the siblings it extends to are materialized now
    while (node.level > 0) {
        (void)node_advice(child(node, 1));
        node = child(node, 0);
        std_chain_[node.level] = node;
        (void)node_advice(node);
    }
}

Fe FFTree::psi(unsigned i, Fe x) const
{
    const RationalMap& m = maps_.at(i);
    return field_.div(poly_eval(field_, m.u, x), poly_eval(field_, m.v, x));
}

void FFTree::check_node(BasicSet node) const
{
    if (node.level > depth_ || node.index >= layers_[node.level].size()) {
        throw PreconditionError("no such basic set (level " + std::to_string(node.level) + ", index " +
                                std::to_string(node.index) + ")");
    }
}

BasicSet FFTree::child(BasicSet node, unsigned which) const
{
    check_node(node);
    if (node.level == 0 || which > 1) throw PreconditionError("leaf has no children");
    return BasicSet{node.level - 1, children_[node.level][node.index][which]};
}

BasicSet FFTree::standard_set(unsigned a) const
{
    if (a > depth_) throw PreconditionError("standard set U" + std::to_string(a) + " exceeds the tree depth");
    return std_chain_[a];
}

std::vector<BasicSet> FFTree::standard_basic_sets() const
{
    return std_chain_;
}

const NodeAdvice& FFTree::node_advice(BasicSet node) const
{
    check_node(node);
    const std::function<NodeAdvice()> build = [this, node]() {
        const Field& F = field_;
        NodeAdvice adv;
        adv.levels.resize(node.level + 1);
        std::vector<std::uint32_t> idx{node.index};
        adv.levels[node.level].elems = {layers_[node.level][node.index]};
        for (unsigned i = node.level; i-- > 0;) {
            std::vector<std::uint32_t> below;
            below.reserve(idx.size() * 2);
            for (const std::uint32_t q : idx) {
                below.push_back(children_[i + 1][q][0]);
                below.push_back(children_[i + 1][q][1]);
            }
            idx = std::move(below);
            auto& lv = adv.levels[i];
            lv.elems.reserve(idx.size());
            for (const std::uint32_t j : idx) lv.elems.push_back(layers_[i][j]);

            const std::uint64_t half = idx.size() / 2;
            lv.scale.resize(idx.size());
            for (std::size_t j = 0; j < idx.size(); ++j) {
                lv.scale[j] = F.pow(poly_eval(F, maps_[i].v, lv.elems[j]), half - 1);
            }
            // denominators w0 d and w1 d, inverted in one batch
            std::vector<Fe> dens(idx.size());
            for (std::size_t q = 0; q < half; ++q) {
                const Fe d = F.sub(lv.elems[2 * q], lv.elems[2 * q + 1]);
                dens[2 * q] = F.mul(lv.scale[2 * q], d);
                dens[2 * q + 1] = F.mul(lv.scale[2 * q + 1], d);
            }
            for (const Fe x : dens) require(x.v != 0, "singular decomposition matrix");
            F.batch_invert(dens);
            lv.mats.resize(half);
            for (std::size_t q = 0; q < half; ++q) {
                const Fe s0 = lv.elems[2 * q], s1 = lv.elems[2 * q + 1];
                const Fe i0 = dens[2 * q], i1 = dens[2 * q + 1];
                lv.mats[q] = {F.neg(F.mul(s1, i0)), F.mul(s0, i1), i0, F.neg(i1)};
            }
        }
        return adv;
    };
    return *cache_->get_or_build<NodeAdvice>(node_key(node), build);
}

std::optional<std::uint32_t> FFTree::leaf_index(Fe x) const
{
    auto it = leaf_lookup_.find(x.v);
    if (it == leaf_lookup_.end()) return std::nullopt;
    return it->second;
}

bool FFTree::contains(BasicSet node, Fe x) const
{
    check_node(node);
    auto j = leaf_index(x);
    if (!j) return false;
    std::uint32_t at = *j;
    for (unsigned i = 0; i < node.level; ++i) at = parents_[i][at];
    return at == node.index;
}

bool FFTree::shares_maps_with(const FFTree& other) const
{
    return field_ == other.field_ && maps_ == other.maps_;
}

BasicSet FFTree::parse_set(const std::string& name) const
{
    if (name.size() >= 2 && name[0] == 'U') {
        std::size_t used = 0;
        unsigned long a = 0;
        try {
            a = std::stoul(name.substr(1), &used);
        } catch (const std::exception&) {
            throw PreconditionError("bad basic set name '" + name + "'");
        }
        if (used + 1 != name.size()) throw PreconditionError("bad basic set name '" + name + "'");
        return standard_set(static_cast<unsigned>(a));
    }
    if (name.empty() || name[0] != '0') throw PreconditionError("bad basic set name '" + name + "'");
    BasicSet node = root();
    std::size_t pos = 1;
    while (pos < name.size()) {
        if (name[pos] != '.' || pos + 1 >= name.size()) throw PreconditionError("bad basic set path '" + name + "'");
        const char step = name[pos + 1];
        if (step != 'L' && step != 'R') throw PreconditionError("bad basic set path '" + name + "'");
        if (node.level == 0) throw PreconditionError("basic set path '" + name + "' runs past the leaves");
        node = child(node, step == 'L' ? 0 : 1);
        pos += 2;
    }
    return node;
}

std::string FFTree::set_name(BasicSet node) const
{
    check_node(node);
    if (node == standard_set(node.level)) return "U" + std::to_string(node.level);
    std::string path;
    BasicSet at = node;
    while (at.level < depth_) {
        const std::uint32_t up = parents_[at.level][at.index];
        const bool right = children_[at.level + 1][up][1] == at.index;
        path.insert(0, right ? ".R" : ".L");
        at = BasicSet{at.level + 1, up};
    }
    return "0" + path;
}

SubgroupChoice choose_subgroup_and_coset(const Field& F, const Curve& c, std::uint64_t order, std::uint64_t K,
                                         std::mt19937_64& rng)
{
    if (K < 2 || (K & (K - 1)) != 0) throw PreconditionError("subgroup size must be a power of two above 1");
    if (order % K != 0 || order <= 2 * K) throw PreconditionError("curve order must be a multiple of K above 2K");
    const auto k = static_cast<unsigned>(two_adic_valuation(K));
    const TwoSylow ts = two_sylow_structure(F, c, order, rng);

    SubgroupChoice out;
    out.l1 = ts.l1;
    out.l2 = ts.l2;
    out.k2 = std::min(ts.l2, k);
    out.k1 = k - out.k2;
    if (order == 4 * K && out.k1 + 1 == ts.l1 && out.k2 + 1 == ts.l2) {
        // every coset of this G_0 would be its own negative
        out.k1 = ts.l1;
        out.k2 = ts.l2 - 2;
    }
    if (out.k1 > ts.l1) throw std::runtime_error("2-Sylow estimate too small for the requested subgroup");

    const std::uint64_t odd = order >> two_adic_valuation(order);
    out.gen2 = scalar_mul(F, c, std::int64_t{1} << (ts.l2 - out.k2), ts.gen2);
    const CurvePoint h2_two = out.k2 > 0 ? scalar_mul(F, c, std::int64_t{1} << (out.k2 - 1), out.gen2)
                                         : CurvePoint::at_infinity();
    const int budget = 256;
    out.gen1 = CurvePoint::at_infinity();
    if (out.k1 > 0) {
        bool found = false;
        for (int s = 0; s < budget && !found; ++s) {
            const CurvePoint Q = scalar_mul(F, c, static_cast<std::int64_t>(odd), random_point(F, c, rng));
            const auto j = two_power_order(F, c, Q);
            if (!j || *j < out.k1) continue;
            const CurvePoint g1 = scalar_mul(F, c, std::int64_t{1} << (*j - out.k1), Q);
            const CurvePoint g1_two = scalar_mul(F, c, std::int64_t{1} << (out.k1 - 1), g1);
            if (!h2_two.infinity && g1_two == h2_two) continue;
            out.gen1 = g1;
            found = true;
        }
        if (!found) throw std::runtime_error("no independent generator found for G_0");
    }

    out.members = enumerate_subgroup(F, c, out.gen1, out.k1, out.gen2, out.k2);
    const SubgroupIndex index(out.members);
    {
        std::unordered_set<std::uint64_t> seen;
        std::size_t affine = 0;
        for (const auto& P : out.members) {
            if (P.infinity) continue;
            ++affine;
            seen.insert(P.x.v ^ (P.y.v << 1));
        }
        if (affine + 1 != K || seen.size() != affine) throw InvariantViolation("G_0 enumeration is not of size K");
    }

    for (int s = 0; s < budget; ++s) {
        const CurvePoint D = random_point(F, c, rng);
        if (index.contains(point_add(F, c, D, D))) continue;
        out.coset = D;
        return out;
    }
    throw std::runtime_error("no coset with C != -C found");
}

FFTree build_fftree(std::uint64_t p, unsigned depth, std::uint64_t seed)
{
    if (!is_prime(p) || p <= 3) throw PreconditionError("p must be a prime above 3");
    const Field F(p);
    if (depth == 0 || depth > 30) throw PreconditionError("depth infeasible: depth must be in 1..30");
    const std::uint64_t K = std::uint64_t{1} << depth;
    if (p < 7 || static_cast<unsigned __int128>(K) * K > static_cast<unsigned __int128>(4) * p) {
        throw PreconditionError("depth infeasible: 2^" + std::to_string(depth) + " exceeds 2 sqrt(p)");
    }
    std::mt19937_64 rng(seed);
    const int attempts = 16;
    std::string last_error;
    for (int attempt = 0; attempt < attempts; ++attempt) {
        const std::uint64_t sub_seed = rng();
        try {
            const CurveSearchResult found = find_curve(F, K, sub_seed);
            std::mt19937_64 local(sub_seed ^ 0x9e3779b97f4a7c15ULL);
            const SubgroupChoice g = choose_subgroup_and_coset(F, found.curve, found.order, K, local);
            Chain ch = push_coset(F, found.curve, coset_points(F, found.curve, g.coset, g.members), g.gen1, g.gen2,
                                  depth);
            TreeProvenance pv;
            pv.curves = std::move(ch.curves);
            pv.kernel_xs = std::move(ch.kernel_xs);
            pv.order = found.order;
            pv.l1 = g.l1;
            pv.l2 = g.l2;
            pv.k1 = g.k1;
            pv.k2 = g.k2;
            pv.gen1 = g.gen1;
            pv.gen2 = g.gen2;
            pv.coset = g.coset;
            pv.seed = seed;
            return FFTree(F, std::move(ch.layers), std::move(ch.maps), std::move(pv));
        } catch (const std::runtime_error& e) {
            last_error = e.what();
        }
    }
    throw std::runtime_error("tree construction failed after " + std::to_string(attempts) +
                             " attempts: " + last_error);
}

FFTree build_sibling_tree(const FFTree& tree, std::uint64_t seed)
{
    const TreeProvenance& pv = tree.provenance();
    if (pv.curves.empty()) throw PreconditionError("tree has no provenance to grow a forest from");
    const Field& F = tree.field();
    const Curve& E0 = pv.curves[0];
    const auto members = enumerate_subgroup(F, E0, pv.gen1, pv.k1, pv.gen2, pv.k2);
    const SubgroupIndex index(members);
    std::mt19937_64 rng(seed);
    const int budget = 1024;
    for (int s = 0; s < budget; ++s) {
        const CurvePoint D = random_point(F, E0, rng);
        if (index.contains(point_add(F, E0, D, D))) continue;
        if (index.contains(point_add(F, E0, D, point_neg(F, pv.coset)))) continue;
        if (index.contains(point_add(F, E0, D, pv.coset))) continue;
        Chain ch = push_coset(F, E0, coset_points(F, E0, D, members), pv.gen1, pv.gen2, tree.depth());
        if (ch.maps != tree.maps()) throw InvariantViolation("sibling tree maps differ from the original");
        TreeProvenance out = pv;
        out.coset = D;
        out.seed = seed;
        return FFTree(F, std::move(ch.layers), std::move(ch.maps), std::move(out));
    }
    throw std::runtime_error("no further coset available for a sibling tree");
}

ExtendAdvice extend_advice(const FFTree& tree, BasicSet from, BasicSet to)
{
    return extend_advice(tree, from, tree, to);
}

ExtendAdvice extend_advice(const FFTree& from_tree, BasicSet from, const FFTree& to_tree, BasicSet to)
{
    if (from.level != to.level) throw PreconditionError("extend: basic sets differ in size");
    if (&from_tree != &to_tree && !from_tree.shares_maps_with(to_tree)) {
        throw PreconditionError("extend: trees are not members of one forest");
    }
    return ExtendAdvice{&from_tree.node_advice(from), &to_tree.node_advice(to), from.level};
}

} // namespace ecfft
