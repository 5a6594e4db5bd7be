#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "algmod/algcheck.hpp"

namespace algmod {

struct RunConfig {
  std::uint64_t seed = kDefaultSeed;
  std::size_t workers = 1;
  ClosureBudget budget;
  std::string cache;

  ClosureOptions closure_options() const;
  /// "seed=0x... workers=N max_classes=... max_dim=... max_steps=... omega_window=..."
  std::string echo() const;
};

struct PeriodicityCertificate {
  Module module;
  PeriodicityReport report;
};

using Certificate = std::variant<ClosureCertificate, NonAlgebraicCertificate, PeriodicityCertificate>;

// JSON documents with "format": "algmod-certificate", a "kind" of
// "closure", "nonalgebraic" or "periodicity", the run configuration, and
// every module embedded in the module text format.
std::string certificate_json(ClosureCertificate const& c, RunConfig const& cfg);
std::string certificate_json(NonAlgebraicCertificate const& c, RunConfig const& cfg);
std::string certificate_json(PeriodicityCertificate const& c, RunConfig const& cfg);

/// Throws Error on malformed documents.
Certificate parse_certificate(std::string const& text);

/// Parses and re-verifies from scratch.  Malformed input is reported as a
/// failed verification.
VerifyResult verify_certificate(std::string const& text, std::uint64_t seed = kDefaultSeed);

}  // namespace algmod
