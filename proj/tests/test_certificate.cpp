#include <doctest.h>

#include <json.hpp>

#include "algmod/certificate.hpp"
#include "algmod/heller.hpp"
#include "helpers.hpp"

using namespace testing;

TEST_CASE("closure certificate round trip") {
  auto r = tensor_closure(j0());
  REQUIRE(r.algebraic);
  std::string text = certificate_json(*r.algebraic, RunConfig{});
  CHECK(verify_certificate(text).ok);
  auto c = parse_certificate(text);
  REQUIRE(std::holds_alternative<ClosureCertificate>(c));
  auto const& cc = std::get<ClosureCertificate>(c);
  CHECK(cc.modules.size() == 1);
  CHECK(cc.table[0].classes == r.algebraic->table[0].classes);
}

TEST_CASE("tampered closure certificate names the entry") {
  auto r = tensor_closure(j0());
  REQUIRE(r.algebraic);
  auto j = nlohmann::json::parse(certificate_json(*r.algebraic, RunConfig{}));
  j["table"][0]["summands"][0][1] = 2;
  auto v = verify_certificate(j.dump());
  CHECK_FALSE(v.ok);
  CHECK(v.message.find("M0*M0") != std::string::npos);
}

TEST_CASE("non-algebraic certificate round trip") {
  auto r = tensor_closure(omega(trivial3()));
  REQUIRE(r.nonalgebraic);
  std::string text = certificate_json(*r.nonalgebraic, RunConfig{});
  CHECK(verify_certificate(text).ok);
  auto j = nlohmann::json::parse(text);
  j["i"] = 3;
  CHECK_FALSE(verify_certificate(j.dump()).ok);
}

TEST_CASE("periodicity certificate round trip") {
  auto rep = periodicity(j0());
  std::string text = certificate_json(PeriodicityCertificate{j0(), rep}, RunConfig{});
  CHECK(verify_certificate(text).ok);
  auto j = nlohmann::json::parse(text);
  j["report"]["verdict"] = "NonPeriodic";
  CHECK_FALSE(verify_certificate(j.dump()).ok);
}

TEST_CASE("malformed certificates") {
  CHECK_FALSE(verify_certificate("not json").ok);
  CHECK_FALSE(verify_certificate("{}").ok);
  CHECK_FALSE(verify_certificate(R"({"format":"algmod-certificate","kind":"other"})").ok);
  CHECK_THROWS_AS(parse_certificate("[1,2"), Error);
}

TEST_CASE("config echo") {
  RunConfig cfg;
  std::string e = cfg.echo();
  CHECK(e.find("seed=0xA16EB4A1C") != std::string::npos);
  CHECK(e.find("max_classes=64") != std::string::npos);
  CHECK(e.find("omega_window=6") != std::string::npos);
}
