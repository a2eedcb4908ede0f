#include "sympro/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "sympro/errors.hpp"

namespace sympro {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string cell(double v) { return format_g17(v); }

CsvWriter::CsvWriter(std::filesystem::path path, const std::vector<std::string>& header)
    : path_(std::move(path)), columns_(header.size()) {
    std::filesystem::create_directories(path_.parent_path());
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) buffer_ += ',';
        buffer_ += header[i];
    }
    buffer_ += '\n';
}

void CsvWriter::write_row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_)
        throw Error("CsvWriter: row width " + std::to_string(cells.size()) + " != header width " +
                    std::to_string(columns_));
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) buffer_ += ',';
        buffer_ += cells[i];
    }
    buffer_ += '\n';
}

void CsvWriter::close() {
    if (closed_) return;
    write_text_file(path_, buffer_);
    closed_ = true;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("short write to '" + path.string() + "'");
}

std::uint64_t fnv1a64(const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t h = 14695981039346656037ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= bytes[i];
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t hash_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "' for hashing");
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return fnv1a64(content.data(), content.size());
}

// --- svg ----------------------------------------------------------------------

namespace {
constexpr double kMarginLeft = 70.0, kMarginRight = 20.0, kMarginTop = 40.0, kMarginBottom = 50.0;
}

SvgPlot::SvgPlot(double width, double height, std::string title)
    : width_(width), height_(height), title_(std::move(title)) {}

void SvgPlot::set_axes(double xmin, double xmax, double ymin, double ymax, std::string xlabel,
                       std::string ylabel, bool log_x, bool log_y) {
    log_x_ = log_x;
    log_y_ = log_y;
    auto tf = [](double v, bool log_scale) { return log_scale ? std::log10(v) : v; };
    xmin_ = tf(xmin, log_x);
    xmax_ = tf(xmax, log_x);
    ymin_ = tf(ymin, log_y);
    ymax_ = tf(ymax, log_y);
    if (xmax_ <= xmin_) xmax_ = xmin_ + 1.0;
    if (ymax_ <= ymin_) ymax_ = ymin_ + 1.0;
    xlabel_ = std::move(xlabel);
    ylabel_ = std::move(ylabel);
}

double SvgPlot::px(double x) const {
    const double v = log_x_ ? std::log10(x) : x;
    return kMarginLeft + (v - xmin_) / (xmax_ - xmin_) * (width_ - kMarginLeft - kMarginRight);
}

double SvgPlot::py(double y) const {
    const double v = log_y_ ? std::log10(y) : y;
    return height_ - kMarginBottom -
           (v - ymin_) / (ymax_ - ymin_) * (height_ - kMarginTop - kMarginBottom);
}

void SvgPlot::polyline(const std::vector<std::pair<double, double>>& points,
                       const std::string& color) {
    if (points.empty()) return;
    body_ += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : points)
        body_ += format_g17(px(x)).substr(0, 8) + "," + format_g17(py(y)).substr(0, 8) + " ";
    body_ += "\"/>\n";
}

void SvgPlot::scatter(const std::vector<std::pair<double, double>>& points,
                      const std::string& color, double radius) {
    for (const auto& [x, y] : points)
        body_ += "<circle cx=\"" + format_g17(px(x)).substr(0, 8) + "\" cy=\"" +
                 format_g17(py(y)).substr(0, 8) + "\" r=\"" + format_g17(radius).substr(0, 5) +
                 "\" fill=\"" + color + "\" fill-opacity=\"0.7\"/>\n";
}

void SvgPlot::bars(const std::vector<std::pair<double, double>>& points, const std::string& color,
                   double bar_width) {
    const double y0 = py(log_y_ ? ymin_ : 0.0);
    for (const auto& [x, y] : points) {
        const double top = std::min(py(y), y0);
        const double h = std::abs(py(y) - y0);
        body_ += "<rect x=\"" + format_g17(px(x) - bar_width / 2).substr(0, 8) + "\" y=\"" +
                 format_g17(top).substr(0, 8) + "\" width=\"" + format_g17(bar_width).substr(0, 5) +
                 "\" height=\"" + format_g17(h).substr(0, 8) + "\" fill=\"" + color + "\"/>\n";
    }
}

void SvgPlot::hline(double y, const std::string& color) {
    body_ += "<line x1=\"" + format_g17(px(log_x_ ? std::pow(10.0, xmin_) : xmin_)).substr(0, 8) +
             "\" x2=\"" + format_g17(width_ - kMarginRight).substr(0, 8) + "\" y1=\"" +
             format_g17(py(y)).substr(0, 8) + "\" y2=\"" + format_g17(py(y)).substr(0, 8) +
             "\" stroke=\"" + color + "\" stroke-dasharray=\"4 3\"/>\n";
}

std::string SvgPlot::render() const {
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string((int)width_) +
           "\" height=\"" + std::to_string((int)height_) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + std::to_string((int)(width_ / 2)) +
           "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" + title_ + "</text>\n";
    // frame
    svg += "<rect x=\"" + std::to_string((int)kMarginLeft) + "\" y=\"" +
           std::to_string((int)kMarginTop) + "\" width=\"" +
           std::to_string((int)(width_ - kMarginLeft - kMarginRight)) + "\" height=\"" +
           std::to_string((int)(height_ - kMarginTop - kMarginBottom)) +
           "\" fill=\"none\" stroke=\"black\"/>\n";
    // axis labels and range ticks
    auto tick = [this](double v, bool log_scale) {
        return format_g17(log_scale ? std::pow(10.0, v) : v).substr(0, 8);
    };
    svg += "<text x=\"" + std::to_string((int)(width_ / 2)) + "\" y=\"" +
           std::to_string((int)(height_ - 12)) + "\" text-anchor=\"middle\" font-size=\"12\">" +
           xlabel_ + "</text>\n";
    svg += "<text x=\"16\" y=\"" + std::to_string((int)(height_ / 2)) +
           "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 " +
           std::to_string((int)(height_ / 2)) + ")\">" + ylabel_ + "</text>\n";
    svg += "<text x=\"" + std::to_string((int)kMarginLeft) + "\" y=\"" +
           std::to_string((int)(height_ - kMarginBottom + 16)) + "\" font-size=\"10\">" +
           tick(xmin_, log_x_) + "</text>\n";
    svg += "<text x=\"" + std::to_string((int)(width_ - kMarginRight)) + "\" y=\"" +
           std::to_string((int)(height_ - kMarginBottom + 16)) +
           "\" text-anchor=\"end\" font-size=\"10\">" + tick(xmax_, log_x_) + "</text>\n";
    svg += "<text x=\"" + std::to_string((int)(kMarginLeft - 4)) + "\" y=\"" +
           std::to_string((int)(height_ - kMarginBottom)) +
           "\" text-anchor=\"end\" font-size=\"10\">" + tick(ymin_, log_y_) + "</text>\n";
    svg += "<text x=\"" + std::to_string((int)(kMarginLeft - 4)) + "\" y=\"" +
           std::to_string((int)(kMarginTop + 10)) + "\" text-anchor=\"end\" font-size=\"10\">" +
           tick(ymax_, log_y_) + "</text>\n";
    svg += body_;
    svg += "</svg>\n";
    return svg;
}

void SvgPlot::save(const std::filesystem::path& path) const { write_text_file(path, render()); }

} // namespace sympro
