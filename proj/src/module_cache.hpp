#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "algmod/matrix.hpp"
#include "algmod/presentation.hpp"

namespace algmod::detail {

  struct ModuleCache {
    std::once_flag monomials_once;
    std::vector<Matrix> monomials;
    std::once_flag fingerprint_once;
    std::vector<std::size_t> fingerprint;
    std::once_flag presentation_once;
    std::unique_ptr<Presentation> presentation;
  };

}  // namespace algmod::detail
