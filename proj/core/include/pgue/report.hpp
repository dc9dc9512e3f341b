#pragma once

#include <map>
#include <string>
#include <vector>

#include "pgue/real.hpp"

namespace pgue {

// One comparison row: a finite-n value against its limit-side prediction.
struct ReportRow {
  std::map<std::string, std::string> labels;  // n, u, v, s, tau, ...
  Real finite_value;
  Real limit_value;
  Real abs_error;  // |finite - limit| by construction
  std::map<std::string, std::string> meta;    // wall_ms, tolerances, notes

  static ReportRow make(std::map<std::string, std::string> labels, const Real& finite,
                        const Real& limit);
};

// Fixed column set:
// experiment,n,m,s,tau,u,v,finite_value,limit_value,abs_error,precision_bits,rtol,wall_ms
std::string report_csv(const std::vector<ReportRow>& rows);
void write_report_csv(const std::string& path, const std::vector<ReportRow>& rows);

std::string report_json(const std::vector<ReportRow>& rows);
void write_report_json(const std::string& path, const std::vector<ReportRow>& rows);

// extension-dispatched (.json -> JSON, else CSV)
void write_report(const std::string& path, const std::vector<ReportRow>& rows);

// CSV round-trip support (used by the lossless-serialization check)
std::vector<std::map<std::string, std::string>> parse_csv(const std::string& text);

}  // namespace pgue
