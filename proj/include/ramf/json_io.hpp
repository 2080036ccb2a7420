#pragma once

#include <json.hpp>
#include <string>

#include "ramf/eisenstein.hpp"
#include "ramf/expansion.hpp"
#include "ramf/lseries.hpp"
#include "ramf/verifier.hpp"

namespace ramf {

using Json = nlohmann::ordered_json;

// Serialises with every double printed as %.17g.
std::string dump17(const Json& j, int indent = 2);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

Json complex_json(cplx z);
cplx complex_from_json(const Json& j);

Json to_json(const QExpansion& e);
Json to_json(const BiExpansion& e);
Json to_json(const TestFunction& phi);
Json to_json(const DirichletCharacter& chi, bool with_values = false);
Json to_json(const IntegerMatrix& m);
Json to_json(const RealMatrix& m);
Json to_json(const EisensteinSpec& spec);
Json to_json(const Verdict& v);
Json to_json(const VanishingReport& r);
Json to_json(const GrowthReport& r);
Json to_json(const LValue& l);

QExpansion qexpansion_from_json(const Json& j);
BiExpansion biexpansion_from_json(const Json& j);
TestFunction test_function_from_json(const Json& j);
DirichletCharacter character_from_json(const Json& j);
IntegerMatrix integer_matrix_from_json(const Json& j);

// A QExpansion file is recognised by a "k" key in its terms.
bool looks_like_bi(const Json& j);

}  // namespace ramf
