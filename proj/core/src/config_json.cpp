#include "hedonica/config_json.hpp"

#include <functional>
#include <string>

namespace hedonica {

namespace {

using json = nlohmann::json;

struct Field {
    const char* name;
    std::function<json(const SimConfig&)> get;
    std::function<void(SimConfig&, const json&)> set;
};

template <typename T>
Field number_field(const char* name, T SimConfig::*member) {
    return {name, [member](const SimConfig& c) { return json(c.*member); },
            [name, member](SimConfig& c, const json& v) {
                if (!v.is_number()) throw ConfigParseError(std::string(name) + " must be a number");
                if constexpr (std::is_integral_v<T>) {
                    if (!v.is_number_integer()) throw ConfigParseError(std::string(name) + " must be an integer");
                    if constexpr (std::is_unsigned_v<T>) {
                        if (v.is_number_unsigned()) {
                            c.*member = v.get<T>();
                        } else if (v.get<std::int64_t>() < 0) {
                            throw ConfigParseError(std::string(name) + " must be non-negative");
                        } else {
                            c.*member = static_cast<T>(v.get<std::int64_t>());
                        }
                    } else {
                        c.*member = v.get<T>();
                    }
                } else {
                    c.*member = v.get<T>();
                }
            }};
}

template <typename E>
Field enum_field(const char* name, E SimConfig::*member, std::optional<E> (*parse)(std::string_view)) {
    return {name, [member](const SimConfig& c) { return json(to_string(c.*member)); },
            [name, member, parse](SimConfig& c, const json& v) {
                if (!v.is_string()) throw ConfigParseError(std::string(name) + " must be a string");
                auto parsed = parse(v.get<std::string>());
                if (!parsed) {
                    throw ConfigParseError("unknown value '" + v.get<std::string>() + "' for " + name);
                }
                c.*member = *parsed;
            }};
}

const std::vector<Field>& fields() {
    static const std::vector<Field> table = {
        number_field("n_agents", &SimConfig::n_agents),
        number_field("n_steps", &SimConfig::n_steps),
        number_field("n_runs", &SimConfig::n_runs),
        number_field("seed", &SimConfig::seed),
        number_field("bad_reputation_coeff", &SimConfig::bad_reputation_coeff),
        number_field("honesty_min", &SimConfig::honesty_min),
        number_field("honesty_max", &SimConfig::honesty_max),
        number_field("response_deadline", &SimConfig::response_deadline),
        number_field("confirm_deadline", &SimConfig::confirm_deadline),
        number_field("obligatory_stay", &SimConfig::obligatory_stay),
        number_field("leave_penalty", &SimConfig::leave_penalty),
        number_field("enroll_fee", &SimConfig::enroll_fee),
        number_field("initiator_reward_share", &SimConfig::initiator_reward_share),
        number_field("comm_cost", &SimConfig::comm_cost),
        number_field("step_coeff", &SimConfig::step_coeff),
        number_field("trust_reward", &SimConfig::trust_reward),
        number_field("trust_punishment", &SimConfig::trust_punishment),
        number_field("alpha", &SimConfig::alpha),
        number_field("beta", &SimConfig::beta),
        number_field("max_proposals_per_step", &SimConfig::max_proposals_per_step),
        number_field("max_confirms_per_step", &SimConfig::max_confirms_per_step),
        number_field("candidate_random_count", &SimConfig::candidate_random_count),
        number_field("candidate_sent_count", &SimConfig::candidate_sent_count),
        number_field("candidate_recv_count", &SimConfig::candidate_recv_count),
        number_field("random_coalition_size_max", &SimConfig::random_coalition_size_max),
        enum_field("risk_mix", &SimConfig::risk_mix, &parse_risk_mix),
        enum_field("responder_mix", &SimConfig::responder_mix, &parse_responder_mix),
        enum_field("gained_utility", &SimConfig::gained_utility, &parse_gained_utility),
    };
    return table;
}

const Field& find_field(std::string_view name) {
    for (const auto& f : fields()) {
        if (name == f.name) return f;
    }
    throw ConfigParseError("unknown config key '" + std::string(name) + "'");
}

}  // namespace

nlohmann::json config_to_json(const SimConfig& config) {
    json out = json::object();
    for (const auto& f : fields()) out[f.name] = f.get(config);
    return out;
}

SimConfig config_from_json(const nlohmann::json& doc, SimConfig base) {
    if (!doc.is_object()) throw ConfigParseError("config document must be a JSON object");
    for (const auto& [key, value] : doc.items()) find_field(key).set(base, value);
    return base;
}

void apply_override(SimConfig& config, std::string_view key_value) {
    const auto eq = key_value.find('=');
    if (eq == std::string_view::npos || eq == 0) {
        throw ConfigParseError("override '" + std::string(key_value) + "' is not key=value");
    }
    const auto key = key_value.substr(0, eq);
    const std::string raw(key_value.substr(eq + 1));
    const auto& field = find_field(key);
    json value = json::parse(raw, nullptr, false);
    if (value.is_discarded()) value = raw;
    field.set(config, value);
}

}  // namespace hedonica
