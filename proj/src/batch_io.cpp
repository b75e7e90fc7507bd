#include "hombeat/batch_io.hpp"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "hombeat/errors.hpp"
#include "hombeat/text_io.hpp"

namespace hombeat {

namespace {

constexpr const char* kHeader = "trial_index,variant,class,delta_t_ns";

const char* variant_name(OutcomeKind k) {
    switch (k) {
        case OutcomeKind::ZeroPhoton: return "zero_photon";
        case OutcomeKind::OnePhoton: return "one_photon";
        case OutcomeKind::TwoPhoton: return "two_photon";
    }
    return "?";
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

}  // namespace

std::string batch_to_csv(const SampleBatch& batch) {
    std::string out(kHeader);
    out.push_back('\n');
    for (std::size_t i = 0; i < batch.outcomes.size(); ++i) {
        const DetectionOutcome& o = batch.outcomes[i];
        out += std::to_string(batch.trial_index[i]);
        out.push_back(',');
        out += variant_name(o.kind);
        out.push_back(',');
        if (o.kind == OutcomeKind::TwoPhoton) {
            out += o.cls == EventClass::Bunch ? "bunch" : "coincidence";
            out.push_back(',');
            out += format_double(o.delta_t);
        } else {
            out.push_back(',');
        }
        out.push_back('\n');
    }
    return out;
}

SampleBatch batch_from_csv(const std::string& csv) {
    std::istringstream is(csv);
    std::string line;
    long line_no = 0;

    SampleBatch batch;
    if (!std::getline(is, line) || line != kHeader)
        throw ParseError("line 1: expected header '" + std::string(kHeader) + "'");
    line_no = 1;

    long last_trial = -1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        const std::string where = "line " + std::to_string(line_no);
        const auto fields = split_csv_line(line);
        if (fields.size() != 4)
            throw ParseError(where + ": expected 4 columns, got " + std::to_string(fields.size()));

        long trial = 0;
        try {
            std::size_t pos = 0;
            trial = std::stol(fields[0], &pos);
            if (pos != fields[0].size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw ParseError(where + ": bad trial_index '" + fields[0] + "'");
        }
        if (trial <= last_trial)
            throw ParseError(where + ": trial_index not strictly increasing");
        last_trial = trial;

        DetectionOutcome o;
        if (fields[1] == "zero_photon" || fields[1] == "one_photon") {
            o = fields[1] == "zero_photon" ? DetectionOutcome::zero_photon()
                                           : DetectionOutcome::one_photon();
            if (!fields[2].empty() || !fields[3].empty())
                throw ParseError(where + ": " + fields[1] + " rows must leave class and delta_t_ns empty");
            if (o.kind == OutcomeKind::ZeroPhoton)
                ++batch.counts.zero_photon;
            else
                ++batch.counts.one_photon;
        } else if (fields[1] == "two_photon") {
            EventClass cls;
            if (fields[2] == "bunch")
                cls = EventClass::Bunch;
            else if (fields[2] == "coincidence")
                cls = EventClass::Coincidence;
            else
                throw ParseError(where + ": bad class '" + fields[2] + "'");
            const double dt = parse_double(fields[3], where + ": delta_t_ns");
            if (!std::isfinite(dt)) throw ParseError(where + ": delta_t_ns must be finite");
            o = DetectionOutcome::two_photon(cls, dt);
            if (cls == EventClass::Bunch)
                ++batch.counts.bunch;
            else
                ++batch.counts.coincidence;
        } else {
            throw ParseError(where + ": bad variant '" + fields[1] + "'");
        }
        batch.outcomes.push_back(o);
        batch.trial_index.push_back(trial);
    }
    batch.config.n_events = last_trial + 1;
    batch.config.keep_uninformative =
        static_cast<long>(batch.outcomes.size()) == batch.config.n_events;
    return batch;
}

void write_batch_csv(const SampleBatch& batch, const std::filesystem::path& path) {
    write_file_atomic(path, batch_to_csv(batch));
}

SampleBatch read_batch_csv(const std::filesystem::path& path) {
    try {
        return batch_from_csv(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

}  // namespace hombeat
