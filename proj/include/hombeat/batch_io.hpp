#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "hombeat/sampler.hpp"

namespace hombeat {

// Columnar batch format: header `trial_index,variant,class,delta_t_ns`, one
// row per stored outcome in trial order. Zero/one-photon rows leave class and
// delta_t_ns empty. Values round-trip bit exactly.
std::string batch_to_csv(const SampleBatch& batch);

// Parses a batch CSV. Only row content is recoverable: the returned config
// carries n_events = last trial index + 1 and default sampling settings.
// Throws ParseError with the offending 1-based line number.
SampleBatch batch_from_csv(const std::string& csv);

void write_batch_csv(const SampleBatch& batch, const std::filesystem::path& path);
SampleBatch read_batch_csv(const std::filesystem::path& path);

}  // namespace hombeat
