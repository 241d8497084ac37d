#pragma once

#include <string>
#include <vector>

#include "tqhp/metrics.hpp"
#include "tqhp/operators.hpp"
#include "tqhp/protocol.hpp"
#include "tqhp/skeleton.hpp"

namespace tqhp {

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_no(line) {}
    std::size_t line_no;
};

// MacKay alist interchange (1-based indices, zero padding tolerated).
BitMatrix parse_alist(const std::string& text);
std::string write_alist(const BitMatrix& h);

// Rows of 0/1 characters.
BitMatrix parse_dense01(const std::string& text);
std::string write_dense01(const BitMatrix& h);

BitMatrix load_matrix_file(const std::string& path, const std::string& format);

// JSON emitters; all deterministic (sorted keys, no timestamps).
std::string descriptor_json(const TripleCode& tc);
std::string stabilizers_json(const TripleCode& tc, const StabilizerSet& set);
std::string tensor_json(const IntersectionTensor& t);
// Diagonals of the unnormalized logical action keyed by the rho bitstring.
std::string logical_action_json(const IntersectionTensor& t);
std::string transcript_json(const ProtocolTranscript& tr);
std::string report_json(const CodeReport& rep);
std::string report_table(const CodeReport& rep);
std::string complex_json(const ChainComplex& cx);

// Rebuild the code from a descriptor (inputs + convention round-trip).
TripleCode load_descriptor(const std::string& json_text);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace tqhp
