#pragma once

#include <string>

#include "lupi/oracle.hpp"
#include "lupi/solvers.hpp"

namespace lupi {

// JSON documents mirroring the result types field for field.

std::string to_json(const NESolution& s);
std::string to_json(const SequentialResult& r);
std::string to_json(const C0Interval& c);
std::string to_json(const SimulationStats& s);
std::string to_json(const CneResult& r);
std::string to_json(const BestSymmetricResult& r);
std::string to_json(const PayoffReport& r);

const char* to_string(RootStatus s);

}  // namespace lupi
