/**
 * JSON encodings of the toolkit types.
 *
 *   rational     integer, or string "p/q"
 *   complex      [re, im]
 *   matrix       array of rows
 *   hodge data   {"rank", "weight_filtration": {"k": [vector...]},
 *                 "pairings": {"k": matrix}, "hodge_numbers": [[p, q, k, h]...]}
 *   filtration   {"rank", "steps": {"p": [complex vector...]}}, steps of F^p
 *   cone         {"generators": [matrix...], "gamma_generators": [matrix...]}
 *   fan          {"cones": [cone...], "gamma_generators": [matrix...]}
 *   toric point  {"values": {"index": complex}}
 *   orbit point  {"cone": cone, "filtration": filtration, "flavor": "orbit" | "i-orbit"}
 *   log point    {"monodromy": [matrix...], "filtration": filtration}
 *
 * Object keys come out sorted, so equal values serialize to equal bytes.
 */

#ifndef HODGE_TOOLS_JSON_IO_HPP
#define HODGE_TOOLS_JSON_IO_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <json.hpp>
#include "hodge/hodge.hpp"

namespace hodge::io {

using nlohmann::json;

inline json rational_to_json(const Rational& x)
{
    if (boost::multiprecision::denominator(x) == 1 && boost::multiprecision::abs(x) < Rational(1L << 52))
        return boost::multiprecision::numerator(x).convert_to<long long>();
    return x.str();
}

inline Rational rational_from_json(const json& j)
{
    if (j.is_number_integer())
        return Rational(j.get<long long>());
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    fail(ErrorKind::InvalidInput, "expected an integer or a \"p/q\" string, got " + j.dump());
}

inline json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const json& j)
{
    if (j.is_number())
        return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    fail(ErrorKind::InvalidInput, "expected a number or [re, im], got " + j.dump());
}

inline json rvector_to_json(const RVector& v)
{
    json out = json::array();
    for (const auto& x : v)
        out.push_back(rational_to_json(x));
    return out;
}

inline RVector rvector_from_json(const json& j)
{
    if (!j.is_array())
        fail(ErrorKind::InvalidInput, "expected a vector, got " + j.dump());
    RVector v;
    for (const auto& x : j)
        v.push_back(rational_from_json(x));
    return v;
}

inline json cvector_to_json(const CVector& v)
{
    json out = json::array();
    for (const auto& x : v)
        out.push_back(complex_to_json(x));
    return out;
}

inline CVector cvector_from_json(const json& j)
{
    if (!j.is_array())
        fail(ErrorKind::InvalidInput, "expected a complex vector, got " + j.dump());
    CVector v;
    for (const auto& x : j)
        v.push_back(complex_from_json(x));
    return v;
}

inline json matrix_to_json(const RMatrix& m)
{
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        out.push_back(rvector_to_json(m.row(i)));
    return out;
}

inline RMatrix matrix_from_json(const json& j)
{
    const json& rows = j.is_object() && j.contains("matrix") ? j["matrix"] : j;
    if (!rows.is_array() || rows.empty())
        fail(ErrorKind::InvalidInput, "expected a non-empty array of rows");
    std::vector<RVector> out;
    for (const auto& r : rows)
    {
        out.push_back(rvector_from_json(r));
        if (out.back().size() != out.front().size())
            fail(ErrorKind::InvalidInput, "matrix rows have different lengths");
    }
    return RMatrix::from_rows(out);
}

inline json cmatrix_to_json(const CMatrix& m)
{
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
    {
        CVector row;
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(m(i, j));
        out.push_back(cvector_to_json(row));
    }
    return out;
}

inline std::vector<RMatrix> matrices_from_json(const json& j)
{
    std::vector<RMatrix> out;
    if (!j.is_array())
        fail(ErrorKind::InvalidInput, "expected an array of matrices");
    for (const auto& m : j)
        out.push_back(matrix_from_json(m));
    return out;
}

inline json matrices_to_json(const std::vector<RMatrix>& ms)
{
    json out = json::array();
    for (const auto& m : ms)
        out.push_back(matrix_to_json(m));
    return out;
}

inline int key_to_int(const std::string& k)
{
    try
    {
        std::size_t used = 0;
        int v = std::stoi(k, &used);
        if (used == k.size())
            return v;
    }
    catch (const std::exception&)
    {
    }
    fail(ErrorKind::InvalidInput, "expected an integer key, got '" + k + "'");
}

inline std::size_t rank_from_json(const json& j)
{
    if (!j.contains("rank") || !j["rank"].is_number_unsigned())
        fail(ErrorKind::InvalidInput, "missing non-negative integer \"rank\"");
    return j["rank"].get<std::size_t>();
}

inline json weight_to_json(const IncreasingFiltration& w)
{
    json out = json::object();
    for (const auto& [k, s] : w.jumps())
    {
        json vs = json::array();
        for (const auto& v : s.basis())
            vs.push_back(rvector_to_json(v));
        out[std::to_string(k)] = vs;
    }
    return out;
}

inline IncreasingFiltration weight_from_json(std::size_t rank, const json& j)
{
    if (!j.is_object())
        fail(ErrorKind::InvalidInput, "weight filtration must map weights to spanning vectors");
    std::map<int, RSubspace> steps;
    for (const auto& [k, vs] : j.items())
    {
        std::vector<RVector> vectors;
        for (const auto& v : vs)
            vectors.push_back(rvector_from_json(v));
        steps[key_to_int(k)] = RSubspace::span(rank, vectors);
    }
    return IncreasingFiltration::from_steps(rank, steps);
}

inline json hodge_data_to_json(const HodgeData& d)
{
    json out;
    out["rank"] = d.rank;
    out["weight_filtration"] = weight_to_json(d.weight);
    out["pairings"] = json::object();
    for (const auto& [k, m] : d.pairings)
        out["pairings"][std::to_string(k)] = matrix_to_json(m);
    out["hodge_numbers"] = json::array();
    for (const auto& [key, h] : d.hodge_numbers)
        out["hodge_numbers"].push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), h});
    return out;
}

/** Pairings and Hodge numbers may be absent when only W is needed. */
inline HodgeData hodge_data_from_json(const json& j)
{
    HodgeData d;
    d.rank = rank_from_json(j);
    if (!j.contains("weight_filtration"))
        fail(ErrorKind::InvalidInput, "missing \"weight_filtration\"");
    d.weight = weight_from_json(d.rank, j["weight_filtration"]);
    if (j.contains("pairings"))
        for (const auto& [k, m] : j["pairings"].items())
            d.pairings[key_to_int(k)] = matrix_from_json(m);
    if (j.contains("hodge_numbers"))
        for (const auto& e : j["hodge_numbers"])
        {
            if (!e.is_array() || e.size() != 4)
                fail(ErrorKind::InvalidInput, "hodge number entries are [p, q, k, h]");
            d.hodge_numbers[{e[0].get<int>(), e[1].get<int>(), e[2].get<int>()}] = e[3].get<int>();
        }
    return d;
}

inline json filtration_to_json(const DecreasingFiltration& f)
{
    json out;
    out["rank"] = f.ambient_dim();
    out["steps"] = json::object();
    for (const auto& [p, s] : f.jumps())
    {
        json vs = json::array();
        for (const auto& v : s.basis())
            vs.push_back(cvector_to_json(v));
        out["steps"][std::to_string(p)] = vs;
    }
    return out;
}

inline DecreasingFiltration filtration_from_json(const json& j, double tol = kDefaultTol)
{
    const std::size_t rank = rank_from_json(j);
    if (!j.contains("steps") || !j["steps"].is_object())
        fail(ErrorKind::InvalidInput, "filtration needs \"steps\" mapping p to spanning vectors of F^p");
    std::map<int, CSubspace> steps;
    for (const auto& [p, vs] : j["steps"].items())
    {
        std::vector<CVector> vectors;
        for (const auto& v : vs)
            vectors.push_back(cvector_from_json(v));
        steps[key_to_int(p)] = CSubspace::span(rank, vectors, tol);
    }
    return DecreasingFiltration::from_steps(rank, steps, tol);
}

struct ConeInput
{
    NilpotentCone cone;
    std::vector<RMatrix> gamma_generators;
};

inline json cone_to_json(const NilpotentCone& c, const std::vector<RMatrix>& gamma = {})
{
    json out;
    out["matrix_size"] = c.matrix_size();
    out["generators"] = matrices_to_json(c.rays());
    if (!gamma.empty())
        out["gamma_generators"] = matrices_to_json(gamma);
    return out;
}

inline ConeInput cone_from_json(const json& j, const HodgeData* lambda = nullptr)
{
    if (!j.is_object() || !j.contains("generators"))
        fail(ErrorKind::InvalidInput, "cone needs \"generators\"");
    auto gens = matrices_from_json(j["generators"]);
    std::size_t n = 0;
    if (j.contains("matrix_size"))
        n = j["matrix_size"].get<std::size_t>();
    else if (!gens.empty())
        n = gens.front().rows();
    else
        fail(ErrorKind::InvalidInput, "the zero cone needs \"matrix_size\"");
    ConeInput out{NilpotentCone(n, gens, lambda), {}};
    if (j.contains("gamma_generators"))
        out.gamma_generators = matrices_from_json(j["gamma_generators"]);
    return out;
}

struct FanInput
{
    Fan fan;
    std::vector<RMatrix> gamma_generators;
};

inline json fan_to_json(const Fan& f, const std::vector<RMatrix>& gamma = {})
{
    json out;
    out["cones"] = json::array();
    for (const auto& c : f.cones)
        out["cones"].push_back(cone_to_json(c));
    if (!gamma.empty())
        out["gamma_generators"] = matrices_to_json(gamma);
    return out;
}

inline FanInput fan_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("cones") || !j["cones"].is_array())
        fail(ErrorKind::InvalidInput, "fan needs \"cones\"");
    FanInput out;
    for (const auto& c : j["cones"])
        out.fan.cones.push_back(cone_from_json(c).cone);
    if (j.contains("gamma_generators"))
        out.gamma_generators = matrices_from_json(j["gamma_generators"]);
    return out;
}

inline json toric_point_to_json(const ToricPoint& q)
{
    json out;
    out["values"] = json::object();
    for (std::size_t i = 0; i < q.values.size(); ++i)
        out["values"][std::to_string(i)] = complex_to_json(q.values[i]);
    return out;
}

/** Raw values in basis-index order; indices must be 0..n-1. */
inline std::vector<Complex> toric_values_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("values") || !j["values"].is_object())
        fail(ErrorKind::InvalidInput, "toric point needs \"values\" keyed by basis index");
    std::map<int, Complex> byindex;
    for (const auto& [k, v] : j["values"].items())
        byindex[key_to_int(k)] = complex_from_json(v);
    std::vector<Complex> out;
    for (const auto& [k, v] : byindex)
    {
        if (k != static_cast<int>(out.size()))
            fail(ErrorKind::InvalidInput, "toric point indices must be 0..n-1");
        out.push_back(v);
    }
    return out;
}

inline json orbit_to_json(const OrbitPoint& o, const std::vector<RMatrix>& gamma = {})
{
    json out;
    out["cone"] = cone_to_json(o.cone, gamma);
    out["filtration"] = filtration_to_json(o.representative);
    out["flavor"] = to_string(o.flavor);
    if (o.normal_form)
    {
        json nf = json::array();
        for (const auto& w : *o.normal_form)
            nf.push_back(complex_to_json(w));
        out["normal_form"] = nf;
    }
    return out;
}

struct OrbitInput
{
    OrbitPoint point;
    std::vector<RMatrix> gamma_generators;
};

inline OrbitInput orbit_from_json(const json& j, double tol = kDefaultTol)
{
    if (!j.is_object() || !j.contains("cone") || !j.contains("filtration"))
        fail(ErrorKind::InvalidInput, "orbit point needs \"cone\" and \"filtration\"");
    auto c = cone_from_json(j["cone"]);
    OrbitFlavor flavor = OrbitFlavor::Full;
    if (j.contains("flavor"))
    {
        auto s = j["flavor"].get<std::string>();
        if (s == "i-orbit")
            flavor = OrbitFlavor::I;
        else if (s != "orbit")
            fail(ErrorKind::InvalidInput, "flavor must be \"orbit\" or \"i-orbit\"");
    }
    return {OrbitPoint{c.cone, filtration_from_json(j["filtration"], tol), flavor, std::nullopt}, c.gamma_generators};
}

inline json log_point_to_json(const LogPointData& d)
{
    json out;
    out["monodromy"] = matrices_to_json(d.monodromy);
    out["filtration"] = filtration_to_json(d.filtration);
    return out;
}

inline LogPointData log_point_from_json(const json& j, double tol = kDefaultTol)
{
    if (!j.is_object() || !j.contains("monodromy") || !j.contains("filtration"))
        fail(ErrorKind::InvalidInput, "log point needs \"monodromy\" and \"filtration\"");
    return {matrices_from_json(j["monodromy"]), filtration_from_json(j["filtration"], tol)};
}

inline json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        fail(ErrorKind::InvalidInput, "cannot open '" + path + "'");
    try
    {
        return json::parse(in);
    }
    catch (const json::exception& e)
    {
        fail(ErrorKind::InvalidInput, "'" + path + "' is not valid JSON: " + e.what());
    }
}

/** The shipped JSON fixture files, keyed by file name. */
inline std::map<std::string, json> fixture_files()
{
    std::map<std::string, json> out;
    auto elliptic = load_fixture("elliptic");
    out["elliptic.json"] = hodge_data_to_json(*elliptic.data);
    out["tau_i.json"] = filtration_to_json(elliptic_filtration({0.0, 1.0}));
    out["tate.json"] = filtration_to_json(elliptic_filtration({0.0, -1.0}));
    out["n.json"] = matrix_to_json(*elliptic.n);
    out["elliptic_cone.json"] = cone_to_json(*elliptic.cone, elliptic.gamma_generators);
    auto fan = load_fixture("fan_minimal");
    out["fan_minimal.json"] = fan_to_json(*fan.fan, fan.gamma_generators);
    out["fan_missing_zero.json"] = fan_to_json(Fan{{*fan.cone}}, fan.gamma_generators);
    auto m02 = load_fixture("mixed_02");
    out["mixed_02.json"] = hodge_data_to_json(*m02.data);
    out["f0.json"] = filtration_to_json(*m02.filtration);
    auto m01 = load_fixture("mixed_01_nonadmissible");
    json w01;
    w01["rank"] = m01.weight.ambient_dim();
    w01["weight_filtration"] = weight_to_json(m01.weight);
    out["w01.json"] = w01;
    auto c2 = load_fixture("cone2d");
    out["cone2d.json"] = cone_to_json(*c2.cone, c2.gamma_generators);
    out["point_boundary.json"] = toric_point_to_json(ToricPoint{{Complex(0.0, 0.0)}, true});
    out["point_tau.json"] = toric_point_to_json(ToricPoint{{std::exp(Complex(0.0, 2.0 * kPi) * Complex(0.3, 0.5))}, false});
    out["orbit_tate.json"] = orbit_to_json(
        OrbitPoint{*elliptic.cone, elliptic_filtration({0.0, -1.0}), OrbitFlavor::Full, std::nullopt},
        elliptic.gamma_generators);
    out["orbit_zero.json"] = orbit_to_json(
        OrbitPoint{NilpotentCone::zero(2), elliptic_filtration({0.5, 1.0}), OrbitFlavor::Full, std::nullopt},
        elliptic.gamma_generators);
    out["orbit_ray_interior.json"] = orbit_to_json(
        OrbitPoint{*elliptic.cone, elliptic_filtration({0.25, 2.0}), OrbitFlavor::Full, std::nullopt},
        elliptic.gamma_generators);
    return out;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}   // namespace hodge::io

#endif
