#pragma once

#include <json.hpp>

#include "sspp/csr.hpp"
#include "sspp/inference.hpp"
#include "sspp/model.hpp"
#include "sspp/summaries.hpp"

namespace sspp {

using Json = nlohmann::ordered_json;

Json to_json(const Window& window);
Json to_json(const FitResult& fit, bool include_surface = false);
Json to_json(const BootstrapResult& boot);
Json to_json(const SummaryCurve& curve);
Json to_json(const EnvelopeBand& band);
Json to_json(const GlobalEnvelopeResult& result);
Json to_json(const PiOfRReport& report);

}  // namespace sspp
