#pragma once

#include "sbcheck/ingest.hpp"

#include <string>

namespace sbtest {

inline std::string model_path(const std::string& file) { return std::string(SBCHECK_MODELS_DIR) + "/" + file; }

inline const sbcheck::SBSystem& predator_s0() {
  static const sbcheck::SBSystem sys = sbcheck::load_file(model_path("predator_s0.sbs"));
  return sys;
}

inline const sbcheck::SBSystem& predator_s1() {
  static const sbcheck::SBSystem sys = sbcheck::load_file(model_path("predator_s1.sbs"));
  return sys;
}

inline sbcheck::BState bstate(const sbcheck::SBSystem& sys, const std::string& id) { return *sys.find_bstate(id); }
inline sbcheck::SState sstate(const sbcheck::SBSystem& sys, const std::string& id) { return *sys.find_sstate(id); }

} // namespace sbtest
