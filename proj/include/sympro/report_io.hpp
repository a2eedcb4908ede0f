#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <type_traits>
#include <vector>

namespace sympro {

// 17 significant digits round-trips doubles exactly, keeping CSV output
// byte-stable across runs.
std::string format_g17(double v);

// CSV writer with fixed column order and formatting. write_row converts
// doubles through format_g17; strings pass through unquoted (no commas in
// this project's labels).
class CsvWriter {
  public:
    CsvWriter(std::filesystem::path path, const std::vector<std::string>& header);
    void write_row(const std::vector<std::string>& cells);
    std::filesystem::path path() const { return path_; }
    void close();

  private:
    std::filesystem::path path_;
    std::string buffer_;
    std::size_t columns_;
    bool closed_ = false;
};

std::string cell(double v);
template <class T>
    requires std::is_integral_v<T>
std::string cell(T v) {
    return std::to_string(v);
}

void write_text_file(const std::filesystem::path& path, const std::string& content);

// FNV-1a 64-bit content hash used by the manifest integrity check.
std::uint64_t fnv1a64(const void* data, std::size_t len);
std::uint64_t hash_file(const std::filesystem::path& path);

// Minimal native SVG emission: polylines, scatter markers, and bars over a
// linear or log-scaled frame. Plots are conveniences; the CSVs are the
// contract.
class SvgPlot {
  public:
    SvgPlot(double width, double height, std::string title);
    void set_axes(double xmin, double xmax, double ymin, double ymax,
                  std::string xlabel, std::string ylabel, bool log_x = false, bool log_y = false);
    void polyline(const std::vector<std::pair<double, double>>& points, const std::string& color);
    void scatter(const std::vector<std::pair<double, double>>& points, const std::string& color,
                 double radius = 3.0);
    void bars(const std::vector<std::pair<double, double>>& points, const std::string& color,
              double bar_width = 6.0);
    void hline(double y, const std::string& color);
    std::string render() const;
    void save(const std::filesystem::path& path) const;

  private:
    double px(double x) const;
    double py(double y) const;
    double width_, height_;
    std::string title_;
    double xmin_ = 0.0, xmax_ = 1.0, ymin_ = 0.0, ymax_ = 1.0;
    std::string xlabel_, ylabel_;
    bool log_x_ = false, log_y_ = false;
    std::string body_;
};

} // namespace sympro
