#pragma once

#include <json.hpp>

#include "recsum/density.hpp"
#include "recsum/expsum.hpp"
#include "recsum/hypotheses.hpp"
#include "recsum/lrs.hpp"
#include "recsum/modforms.hpp"
#include "recsum/waring.hpp"

namespace recsum::io {

using json = nlohmann::json;

// Big integers are emitted as decimal strings, complex values as [re, im].

json seq_to_json(const lrs::LinRecSeq& seq);
lrs::LinRecSeq seq_from_json(const json& j);

json hecke_params_to_json(const modforms::HeckeParams& p);
modforms::HeckeParams hecke_params_from_json(const json& j);

// full=false drops the per-value arrays above 10^4 entries
json profile_to_json(const expsum::SumProfile& prof, bool full = false);
json korobov_to_json(const expsum::KorobovReport& rep);
json spectral_to_json(const lrs::SpectralData& sd);
json condition_report_to_json(const hypotheses::ConditionReport& rep);
json improvement_to_json(const hypotheses::ImprovementReport& rep);
json certificate_to_json(const hypotheses::ExclusionCertificate& cert);
json rou_verdict_to_json(const hypotheses::RootOfUnityVerdict& v);
json tau_table_to_json(const modforms::TauTable& t);
json waring_to_json(const waring::WaringTable& t, const waring::MainTermReport& mt,
                    double fourier_discrepancy, std::optional<unsigned> min_basis);
json nonlinearity_to_json(const expsum::NonlinearityReport& rep, bool full = false);
json density_to_json(const density::DensityReport& rep);
json nice_tuple_to_json(const density::NiceTupleReport& rep);
json frobenius_sample_to_json(const density::FrobeniusSample& rep);
json exceptional_to_json(const modforms::ExceptionalReport& rep);

// canonical dump: sorted keys, two-space indent, trailing newline
std::string dump(const json& j);

}  // namespace recsum::io
