// Command-line front door: parse an instance file, run a configured scheme,
// emit a machine-readable report and an optional JSON-lines trace.
//
// Exit codes: 0 run finished with a certified gap, 1 invalid input or
// configuration, 2 run aborted or finished without a certificate.

#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "radial/radial.hpp"

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"radial: first-order LP/SDP solver via boundary projection"};

  std::string input;
  std::string scheme_name = "nonsmoothed";
  std::string out_path;
  std::string trace_path;
  radial::SchemeConfig config;
  double diam_flag = 0.0;

  app.add_option("input", input, "instance file (.json for LP, .dat-s for SDP)")->required();
  app.add_option("--scheme", scheme_name, "nonsmoothed, smoothed, or subgradient-only")
      ->default_val("nonsmoothed");
  app.add_option("--eps", config.epsilon, "target relative accuracy in (0,1)")->default_val(0.25);
  app.add_option("--diam", diam_flag, "override the level-set diameter bound");
  app.add_option("--max-outer", config.outer_cap, "stage cap for the phase-1 loop");
  app.add_option("--seed", config.seed, "seed recorded in the report");
  app.add_option("--trace", trace_path, "write a JSON-lines trace here ('-' for stdout)");
  app.add_option("--trace-stride", config.trace_stride, "also sample every k-th inner iteration");
  app.add_option("--out", out_path, "write the report here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    config.scheme = radial::scheme_from_string(scheme_name);
    if (app.count("--diam") > 0) config.diam_override = diam_flag;
    config.check();

    std::ofstream trace_file;
    std::unique_ptr<radial::TraceWriter> tracer;
    if (!trace_path.empty()) {
      if (trace_path == "-") {
        tracer = std::make_unique<radial::TraceWriter>(std::cout, config.trace_stride);
      } else {
        trace_file.open(trace_path);
        if (!trace_file) throw radial::Error("cannot write trace to " + trace_path);
        tracer = std::make_unique<radial::TraceWriter>(trace_file, config.trace_stride);
      }
    }
    const radial::SchemeObserver observer = tracer ? tracer->observer() : radial::SchemeObserver{};
    const std::string hash = radial::input_hash_hex(input);

    radial::RunReport report;
    if (ends_with(input, ".dat-s")) {
      report = radial::run(radial::load_sdp_instance(input), config, observer, hash);
    } else if (ends_with(input, ".json")) {
      report = radial::run(radial::parse_lp_json(input), config, observer, hash);
    } else {
      throw radial::ParseError("unrecognized input extension (expected .json or .dat-s): " + input);
    }

    const std::string text = radial::report_to_json(report).dump(2) + "\n";
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(out_path);
      if (!out) throw radial::Error("cannot write report to " + out_path);
      out << text;
    }
    if (report.status != radial::RunStatus::certified)
      std::cerr << "run not certified: " << radial::to_string(report.status) << "\n";
    return report.exit_code();
  } catch (const radial::ParseError& err) {
    std::cerr << "parse error: " << err.what() << "\n";
    return 1;
  } catch (const radial::InvalidInstance& err) {
    std::cerr << "invalid instance: " << err.what() << "\n";
    return 1;
  } catch (const radial::ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return 1;
  } catch (const radial::UnboundedCertificate& err) {
    std::cerr << "unbounded: " << err.what() << "\n";
    return 2;
  } catch (const radial::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}
