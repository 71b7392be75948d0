#pragma once

#include <string>
#include <string_view>

#include "gaugewalk/forms.hpp"
#include "gaugewalk/gauge.hpp"
#include "gaugewalk/walk.hpp"

namespace gaugewalk::io {

std::string window_to_json(const LatticeWindow& w);
LatticeWindow window_from_json(std::string_view text);

std::string form_to_json(const forms::DiscreteForm& f, int indent = 1);
forms::DiscreteForm form_from_json(std::string_view text);

std::string system_to_json(const gauge::TranslationSystem& T, int indent = 1);
/// Accepts either a translation-system document or a bare 1-form.
gauge::TranslationSystem system_from_json(std::string_view text);

std::string rational_to_json(const gauge::RationalAnalysis& r, int indent = 1);

/// Column-major complex pairs with a header naming window, d and ordering.
std::string matrix_to_json(const walk::Matrix& m, const LatticeWindow& w, int d);
/// "GWMATRIX <header json>\n" followed by little-endian float64 re/im pairs.
std::string matrix_to_binary(const walk::Matrix& m, const LatticeWindow& w, int d);
walk::Matrix matrix_from_binary(std::string_view data);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view data);

std::string format_double(double v);

}  // namespace gaugewalk::io
