#include "catbox/json.hpp"

namespace catbox {

Json to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const DensityMatrix& rho) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < 2; ++i) {
        rows.push_back(Json::array({to_json(rho(i, 0)), to_json(rho(i, 1))}));
    }
    return rows;
}

DensityMatrix density_from_json(const Json& j) {
    try {
        Matrix2 m;
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t k = 0; k < 2; ++k) {
                const Json& z = j.at(i).at(k);
                m[2 * i + k] = Complex{z.at("re").get<double>(), z.at("im").get<double>()};
            }
        }
        return DensityMatrix::from_entries(m);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("malformed density matrix: ") + e.what());
    }
}

Json to_json(const MeasurementRecord& r) {
    return Json{{"observable", r.observable_name},
                {"outcome", r.outcome_label},
                {"probability", r.probability_of_outcome},
                {"pre_state", to_json(r.pre_state)},
                {"post_state", to_json(r.post_state)},
                {"rng_draw", r.rng_draw}};
}

Json to_json(const LogEntry& entry) {
    Json result;
    if (std::holds_alternative<Accepted>(entry.result)) {
        result = Json{{"kind", "ok"}};
    } else if (const auto* rejected = std::get_if<Rejected>(&entry.result)) {
        result = Json{{"kind", "rejected"}, {"reason", message_key(rejected->reason)}};
    } else {
        result = Json{{"kind", "measurement"},
                      {"record", to_json(std::get<MeasurementRecord>(entry.result))}};
    }
    return Json{{"seq", entry.seq},
                {"event", event_name(entry.event)},
                {"result", std::move(result)},
                {"display_after", message_key(entry.display_after)}};
}

std::string to_jsonl(const std::vector<LogEntry>& entries, std::size_t from) {
    std::string out;
    for (std::size_t i = from; i < entries.size(); ++i) {
        out += to_json(entries[i]).dump();
        out += '\n';
    }
    return out;
}

Json to_json(const PanelView& v) {
    Json ids = Json::array();
    for (MessageId id : v.display) ids.push_back(message_key(id));
    Json selected = nullptr;
    if (v.selected) selected = *v.selected == ObservableId::H ? "h" : "s";
    return Json{{"display", std::move(ids)},
                {"display_text", v.display_text},
                {"led", led_name(v.led)},
                {"lid", lid_name(v.lid)},
                {"cat_present", v.cat_present},
                {"selected", std::move(selected)},
                {"buttons",
                 {{"prepare", v.prepare_enabled},
                  {"select", v.select_enabled},
                  {"measure", v.measure_enabled},
                  {"lid", true}}}};
}

Json to_json(const FrequencyTable& t, const StateSpec& prep) {
    Json outcomes = Json::array();
    for (std::size_t k = 0; k < 2; ++k) {
        outcomes.push_back(
            Json{{"label", t.labels[k]}, {"count", t.counts[k]}, {"frequency", t.frequency(k)}});
    }
    return Json{{"prep", to_string(prep)},
                {"observable", t.observable_name},
                {"total", t.total},
                {"outcomes", std::move(outcomes)}};
}

Json to_json(const Verdict& v, const StateSpec& prep) {
    return Json{{"prep", to_string(prep)},
                {"decision", v.decision == Decision::Pure ? "pure" : "mixed"},
                {"trials", v.trials},
                {"minus_count", v.minus_count},
                {"error_bound", v.error_bound}};
}

Json to_json(const ChshReport& r) {
    Json j{{"settings",
            {{"a", r.settings.a},
             {"a_prime", r.settings.a_prime},
             {"b", r.settings.b},
             {"b_prime", r.settings.b_prime}}},
           {"analytic", r.analytic},
           {"lhv_bound", r.lhv_bound},
           {"tsirelson_bound", r.tsirelson_bound},
           {"violates_lhv", std::abs(r.analytic) > r.lhv_bound}};
    if (r.sampled) {
        const ChshSample& s = *r.sampled;
        j["sampled"] = Json{{"n_per_setting", s.n_per_setting},
                            {"estimate", s.estimate},
                            {"std_error", s.std_error},
                            {"correlations", s.correlations},
                            {"counts", s.counts}};
    }
    return j;
}

}  // namespace catbox
