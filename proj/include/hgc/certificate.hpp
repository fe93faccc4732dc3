#pragma once

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hgc {

/// One verified statement.  Verdicts:
///   PASS / FAIL            -- the ordinary gate
///   UNSUPPORTED            -- requested but outside the artifact's hypotheses
///   PAPER-DISCREPANCY      -- a displayed witness that fails as printed;
///                             excluded from the failure gate by design so the
///                             tool can report a source typo without failing.
struct CertRecord {
    std::string id;         // "<suite>/<name>", unique, sort key
    std::string suite;
    std::string statement;
    nlohmann::json inputs = nlohmann::json::object();
    std::string verdict;
    std::string witness;    // explicit function/divisor text when one exists
    nlohmann::json detail = nlohmann::json::object();

    bool operator==(const CertRecord&) const = default;

    nlohmann::json to_json() const {
        return {{"id", id},         {"suite", suite},   {"statement", statement},
                {"inputs", inputs}, {"verdict", verdict}, {"witness", witness},
                {"detail", detail}};
    }
    static CertRecord from_json(const nlohmann::json& j) {
        CertRecord r;
        r.id = j.at("id");
        r.suite = j.at("suite");
        r.statement = j.at("statement");
        r.inputs = j.at("inputs");
        r.verdict = j.at("verdict");
        r.witness = j.at("witness");
        r.detail = j.at("detail");
        return r;
    }
};

struct CertificateBundle {
    std::string tool_version = "hgc-verify 1.0.0";
    nlohmann::json config = nlohmann::json::object();
    std::vector<CertRecord> records;
    double wall_seconds = 0.0;  // header only; records carry no timings

    long count(const std::string& verdict) const {
        long k = 0;
        for (const auto& r : records)
            if (r.verdict == verdict) ++k;
        return k;
    }
    long passes() const { return count("PASS"); }
    long failures() const { return count("FAIL"); }
    long unsupported() const { return count("UNSUPPORTED"); }
    long discrepancies() const { return count("PAPER-DISCREPANCY"); }

    /// 0 iff no FAIL and no UNSUPPORTED among the requested records.
    int exit_code() const { return (failures() == 0 && unsupported() == 0) ? 0 : 1; }

    void sort_records() {
        std::sort(records.begin(), records.end(),
                  [](const CertRecord& a, const CertRecord& b) { return a.id < b.id; });
    }

    nlohmann::json to_json() const {
        nlohmann::json recs = nlohmann::json::array();
        for (const auto& r : records) recs.push_back(r.to_json());
        return {{"tool_version", tool_version},
                {"config", config},
                {"records", recs},
                {"summary",
                 {{"pass", passes()},
                  {"fail", failures()},
                  {"unsupported", unsupported()},
                  {"paper_discrepancy", discrepancies()}}},
                {"wall_seconds", wall_seconds}};
    }
    static CertificateBundle from_json(const nlohmann::json& j) {
        CertificateBundle b;
        b.tool_version = j.at("tool_version");
        b.config = j.at("config");
        for (const auto& r : j.at("records")) b.records.push_back(CertRecord::from_json(r));
        b.wall_seconds = j.at("wall_seconds");
        return b;
    }

    std::string emit_json() const { return to_json().dump(2) + "\n"; }

    std::string emit_markdown() const {
        std::string out = "# " + tool_version + " certificate bundle\n\n";
        out += "config: `" + config.dump() + "`\n\n";
        out += "| verdict | count |\n|---|---|\n";
        out += "| PASS | " + std::to_string(passes()) + " |\n";
        out += "| FAIL | " + std::to_string(failures()) + " |\n";
        out += "| UNSUPPORTED | " + std::to_string(unsupported()) + " |\n";
        out += "| PAPER-DISCREPANCY | " + std::to_string(discrepancies()) + " |\n";
        std::string cur;
        for (const auto& r : records) {
            if (r.suite != cur) {
                cur = r.suite;
                out += "\n## suite: " + cur + "\n\n";
                out += "| id | verdict | statement | witness |\n|---|---|---|---|\n";
            }
            out += "| " + r.id + " | " + r.verdict + " | " + r.statement + " | " +
                   (r.witness.empty() ? "-" : "`" + r.witness + "`") + " |\n";
        }
        return out;
    }

    void write_file(const std::string& path, const std::string& text) const {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file: " + path);
        f << text;
        if (!f.good()) throw std::runtime_error("write failed: " + path);
    }
};

}  // namespace hgc
