#include "ecfft/serialize.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace ecfft {

namespace {

using nlohmann::ordered_json;

std::string dec(Fe x) { return std::to_string(x.v); }

ordered_json fe_array(const std::vector<Fe>& xs)
{
    ordered_json out = ordered_json::array();
    for (const Fe x : xs) out.push_back(dec(x));
    return out;
}

ordered_json point_json(const CurvePoint& P)
{
    if (P.infinity) return "infinity";
    return ordered_json{{"x", dec(P.x)}, {"y", dec(P.y)}};
}

std::uint64_t parse_u64(const ordered_json& j)
{
    if (!j.is_string()) throw FormatError("expected a decimal string");
    const std::string s = j.get<std::string>();
    if (s.empty() || s.size() > 20 || s.find_first_not_of("0123456789") != std::string::npos) {
        throw FormatError("bad decimal '" + s + "'");
    }
    try {
        return std::stoull(s);
    } catch (const std::exception&) {
        throw FormatError("decimal out of range '" + s + "'");
    }
}

Fe parse_fe(const Field& F, const ordered_json& j)
{
    const std::uint64_t v = parse_u64(j);
    if (v >= F.modulus()) throw InvariantViolation("invalid tree: field element not reduced");
    return Fe{v};
}

std::vector<Fe> parse_fe_array(const Field& F, const ordered_json& j)
{
    if (!j.is_array()) throw FormatError("expected an array of field elements");
    std::vector<Fe> out;
    out.reserve(j.size());
    for (const auto& x : j) out.push_back(parse_fe(F, x));
    return out;
}

CurvePoint parse_point(const Field& F, const ordered_json& j)
{
    if (j.is_string() && j.get<std::string>() == "infinity") return CurvePoint::at_infinity();
    if (!j.is_object()) throw FormatError("expected a point");
    return CurvePoint::affine(parse_fe(F, j.at("x")), parse_fe(F, j.at("y")));
}

} // namespace

std::string serialize_tree(const FFTree& tree)
{
    const TreeProvenance& pv = tree.provenance();
    ordered_json doc;
    doc["format"] = "ecfft-tree";
    doc["version"] = kTreeFormatVersion;
    doc["p"] = std::to_string(tree.field().modulus());
    doc["k"] = tree.depth();
    doc["seed"] = std::to_string(pv.seed);
    ordered_json curves = ordered_json::array();
    for (const Curve& c : pv.curves) curves.push_back(ordered_json{{"a", dec(c.a)}, {"b", dec(c.b)}});
    doc["curves"] = curves;
    doc["kernel_xs"] = fe_array(pv.kernel_xs);
    ordered_json maps = ordered_json::array();
    for (const RationalMap& m : tree.maps()) {
        maps.push_back(ordered_json{{"u", fe_array(m.u.coeffs())}, {"v", fe_array(m.v.coeffs())}});
    }
    doc["maps"] = maps;
    ordered_json layers = ordered_json::array();
    for (const auto& layer : tree.layers()) layers.push_back(fe_array(layer));
    doc["layers"] = layers;
    doc["coset_provenance"] = ordered_json{
        {"order", std::to_string(pv.order)},
        {"l1", pv.l1},
        {"l2", pv.l2},
        {"k1", pv.k1},
        {"k2", pv.k2},
        {"gen1", point_json(pv.gen1)},
        {"gen2", point_json(pv.gen2)},
        {"coset", point_json(pv.coset)},
    };
    return doc.dump(1) + "\n";
}

FFTree deserialize_tree(const std::string& text)
{
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("tree file is not valid JSON: ") + e.what());
    }
    try {
        if (!doc.is_object() || doc.value("format", "") != "ecfft-tree") throw FormatError("not an ecfft tree file");
        if (!doc.contains("version") || !doc["version"].is_number_integer() ||
            doc["version"].get<int>() != kTreeFormatVersion) {
            throw FormatError("unsupported tree format version");
        }
        const std::uint64_t p = parse_u64(doc.at("p"));
        if (!is_prime(p) || p <= 3 || p >= (std::uint64_t{1} << 62)) throw FormatError("p is not a supported prime");
        const Field F(p);
        const auto k = doc.at("k").get<unsigned>();

        std::vector<std::vector<Fe>> layers;
        for (const auto& layer : doc.at("layers")) layers.push_back(parse_fe_array(F, layer));
        if (layers.size() != k + 1) throw InvariantViolation("invalid tree: layer count differs from depth");
        std::vector<RationalMap> maps;
        for (const auto& m : doc.at("maps")) {
            maps.push_back(RationalMap{Poly(parse_fe_array(F, m.at("u"))), Poly(parse_fe_array(F, m.at("v")))});
        }

        TreeProvenance pv;
        pv.seed = parse_u64(doc.at("seed"));
        for (const auto& c : doc.at("curves")) pv.curves.push_back(Curve{parse_fe(F, c.at("a")), parse_fe(F, c.at("b"))});
        pv.kernel_xs = parse_fe_array(F, doc.at("kernel_xs"));
        const auto& cp = doc.at("coset_provenance");
        pv.order = parse_u64(cp.at("order"));
        pv.l1 = cp.at("l1").get<unsigned>();
        pv.l2 = cp.at("l2").get<unsigned>();
        pv.k1 = cp.at("k1").get<unsigned>();
        pv.k2 = cp.at("k2").get<unsigned>();
        pv.gen1 = parse_point(F, cp.at("gen1"));
        pv.gen2 = parse_point(F, cp.at("gen2"));
        pv.coset = parse_point(F, cp.at("coset"));
        return FFTree(F, std::move(layers), std::move(maps), std::move(pv));
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed tree file: ") + e.what());
    }
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& contents)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::invalid_argument("cannot write '" + path + "'");
    out << contents;
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

void save_tree(const FFTree& tree, const std::string& path)
{
    write_file(path, serialize_tree(tree));
}

FFTree load_tree(const std::string& path)
{
    return deserialize_tree(read_file(path));
}

} // namespace ecfft
