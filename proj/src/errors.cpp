#include "lazy_spectra/errors.hpp"

namespace lazy_spectra {

namespace {
std::string with_line(const std::string& what, std::size_t line) {
  if (line == 0) return what;
  return "line " + std::to_string(line) + ": " + what;
}
}  // namespace

FormatError::FormatError(const std::string& what, std::size_t line)
    : InputError(with_line(what, line)), line_(line) {}

NonConvergenceError::NonConvergenceError(const std::string& what, double residual)
    : SolverError(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}

ScheduleError::ScheduleError(const std::string& what, int rounds)
    : SolverError(what), rounds_(rounds) {}

void rethrow_with_context(const std::string& prefix) {
  try {
    throw;
  } catch (const FormatError& e) {
    throw FormatError(prefix + e.what());
  } catch (const DimensionError& e) {
    throw DimensionError(prefix + e.what());
  } catch (const ValueError& e) {
    throw ValueError(prefix + e.what());
  } catch (const InputError& e) {
    throw InputError(prefix + e.what());
  } catch (const PreconditionError& e) {
    throw PreconditionError(prefix + e.what());
  } catch (const NonConvergenceError& e) {
    throw NonConvergenceError(prefix + e.what(), e.residual());
  } catch (const ConditioningError& e) {
    throw ConditioningError(prefix + e.what());
  } catch (const ScheduleError& e) {
    throw ScheduleError(prefix + e.what(), e.rounds());
  } catch (const AccuracyError& e) {
    throw AccuracyError(prefix + e.what());
  } catch (const SolverError& e) {
    throw SolverError(prefix + e.what());
  } catch (const Error& e) {
    throw Error(prefix + e.what());
  }
}

}  // namespace lazy_spectra
