#include "effdist/json_io.hpp"

#include "effdist/error.hpp"

namespace effdist {

using nlohmann::json;

json to_json(const Dyadic& d)
{
    json out;
    if (d.mantissa().fits_slong_p())
        out["m"] = d.mantissa().get_si();
    else
        out["m"] = d.mantissa().get_str();
    out["e"] = d.exponent();
    return out;
}

Dyadic dyadic_from_json(const json& j)
{
    try {
        if (j.is_object()) {
            const json& m = j.at("m");
            const std::int64_t e = j.at("e").get<std::int64_t>();
            mpz_class mant;
            if (m.is_string()) {
                if (mant.set_str(m.get<std::string>(), 10) != 0)
                    throw Error(ErrorKind::parse_error, "bad mantissa string");
            } else {
                mant = mpz_class(static_cast<long>(m.get<std::int64_t>()));
            }
            return Dyadic(mant, e);
        }
        if (j.is_number_integer())
            return Dyadic(static_cast<long>(j.get<std::int64_t>()));
        if (j.is_string())
            return Dyadic::parse(j.get<std::string>());
    } catch (const json::exception& ex) {
        throw Error(ErrorKind::parse_error, std::string("malformed dyadic: ") + ex.what());
    }
    throw Error(ErrorKind::parse_error, "malformed dyadic: " + j.dump());
}

json to_json(const TestFunction& f)
{
    json arr = json::array();
    for (const auto& k : f.knots())
        arr.push_back(json::array({to_json(k.x), to_json(k.y)}));
    return arr;
}

TestFunction test_function_from_json(const json& j)
{
    if (!j.is_array())
        throw Error(ErrorKind::parse_error, "test function must be an array of [x, y] pairs");
    std::vector<Knot> knots;
    for (const auto& pair : j) {
        if (!pair.is_array() || pair.size() != 2)
            throw Error(ErrorKind::parse_error, "test function knot must be an [x, y] pair");
        knots.push_back({dyadic_from_json(pair[0]), dyadic_from_json(pair[1])});
    }
    try {
        return TestFunction(std::move(knots));
    } catch (const Error& e) {
        throw Error(ErrorKind::parse_error, e.what());
    }
}

} // namespace effdist
