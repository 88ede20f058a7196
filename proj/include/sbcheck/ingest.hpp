#pragma once

// Model files (.sbs): loading with positioned errors and canonical saving.

#include "sbcheck/model.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace sbcheck {

/// The file could not be read.
class IoError : public Error {
public:
  using Error::Error;
};

/// Parses and validates a model. Every failure is a ParseError carrying
/// the line:column of the offending item.
SBSystem load_text(std::string_view text);
SBSystem load_file(const std::filesystem::path& path);

/// Canonical text: declaration order for observables, states and
/// transitions sorted, blocks with at most one entry kept on one line.
/// load_text(save(sys)) == sys.
std::string save(const SBSystem& sys);

} // namespace sbcheck
