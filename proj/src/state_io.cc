#include "qrobust/state_io.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qrobust {

using nlohmann::json;

ParseError::ParseError(const std::string &message, size_t l, size_t c)
    : std::runtime_error(
          l > 0 ? message + " (line " + std::to_string(l) + ", column " + std::to_string(c) + ")" : message),
      line(l),
      column(c) {
}

namespace {

void locate(const std::string &text, size_t byte, size_t &line, size_t &column) {
    line = 1;
    column = 1;
    size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
    for (size_t i = 0; i < end; i++) {
        if (text[i] == '\n') {
            line++;
            column = 1;
        } else {
            column++;
        }
    }
}

std::vector<cplx> read_pairs(const json &arr, const char *field) {
    if (!arr.is_array()) {
        throw ParseError(std::string("field '") + field + "' must be a list of [re, im] pairs", 0, 0);
    }
    std::vector<cplx> out;
    for (size_t i = 0; i < arr.size(); i++) {
        const auto &p = arr[i];
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
            throw ParseError(
                std::string("entry ") + std::to_string(i) + " of '" + field + "' is not a [re, im] pair", 0, 0);
        }
        out.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    return out;
}

void append_pairs(std::string &out, std::span<const cplx> v) {
    char buf[96];
    for (size_t i = 0; i < v.size(); i++) {
        std::snprintf(buf, sizeof(buf), "%s[%.17g, %.17g]", i ? ", " : "", v[i].real(), v[i].imag());
        out += buf;
    }
}

}  // namespace

StateFile parse_state(const std::string &text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        size_t line = 0, column = 0;
        locate(text, e.byte, line, column);
        throw ParseError("malformed JSON", line, column);
    }
    if (!doc.is_object()) {
        throw ParseError("state file must be a JSON object", 0, 0);
    }
    if (!doc.contains("num_qubits") || !doc["num_qubits"].is_number_unsigned()) {
        throw ParseError("missing or invalid 'num_qubits'", 0, 0);
    }
    StateFile f;
    f.num_qubits = doc["num_qubits"].get<size_t>();
    if (f.num_qubits == 0 || f.num_qubits > 20) {
        throw ParseError("'num_qubits' must be between 1 and 20", 0, 0);
    }
    bool has_amp = doc.contains("amplitudes");
    bool has_dicke = doc.contains("dicke");
    if (has_amp == has_dicke) {
        throw ParseError("exactly one of 'amplitudes' and 'dicke' must be present", 0, 0);
    }
    f.dicke = has_dicke;
    f.values = read_pairs(has_dicke ? doc["dicke"] : doc["amplitudes"], has_dicke ? "dicke" : "amplitudes");
    size_t want = has_dicke ? f.num_qubits + 1 : size_t{1} << f.num_qubits;
    if (f.values.size() != want) {
        throw ParseError(
            std::string("'") + (has_dicke ? "dicke" : "amplitudes") + "' has " + std::to_string(f.values.size()) +
                " entries, expected " + std::to_string(want),
            0, 0);
    }
    for (const auto &z : f.values) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw ParseError("non-finite amplitude", 0, 0);
        }
    }
    return f;
}

StateFile read_state_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_state(ss.str());
}

PureState to_pure_state(const StateFile &f, bool renormalize, double tol) {
    if (f.dicke) {
        return symmetric_to_pure(to_symmetric_state(f, renormalize, tol));
    }
    if (renormalize) {
        return PureState::normalized(f.num_qubits, f.values);
    }
    return PureState(f.num_qubits, f.values, tol);
}

SymmetricState to_symmetric_state(const StateFile &f, bool renormalize, double tol) {
    if (!f.dicke) {
        return pure_to_symmetric(to_pure_state(f, renormalize, tol));
    }
    if (renormalize) {
        return SymmetricState::normalized(f.num_qubits, f.values);
    }
    return SymmetricState(f.num_qubits, f.values, tol);
}

std::string format_state(const PureState &psi) {
    std::string out = "{\"num_qubits\": " + std::to_string(psi.num_qubits()) + ", \"amplitudes\": [";
    append_pairs(out, psi.amplitudes());
    return out + "]}\n";
}

std::string format_state(const SymmetricState &s) {
    std::string out = "{\"num_qubits\": " + std::to_string(s.num_qubits()) + ", \"dicke\": [";
    append_pairs(out, s.coefficients());
    return out + "]}\n";
}

}  // namespace qrobust
