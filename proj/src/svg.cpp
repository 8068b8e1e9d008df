#include "qfi/svg.hpp"

#include <cstdio>

namespace qfi {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 30.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return std::string(buf);
}

}  // namespace

SvgPlot::SvgPlot(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

void SvgPlot::set_x_range(double lo, double hi) {
    x_lo_ = lo;
    x_hi_ = hi > lo ? hi : lo + 1.0;
}

void SvgPlot::set_y_range(double lo, double hi) {
    y_lo_ = lo;
    y_hi_ = hi > lo ? hi : lo + 1.0;
}

double SvgPlot::map_x(double x) const {
    return kLeft + (x - x_lo_) / (x_hi_ - x_lo_) * (kWidth - kLeft - kRight);
}

double SvgPlot::map_y(double y) const {
    return kHeight - kBottom - (y - y_lo_) / (y_hi_ - y_lo_) * (kHeight - kTop - kBottom);
}

void SvgPlot::polyline(std::span<const double> xs, std::span<const double> ys,
                       const std::string& color, const std::string& label) {
    body_ += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        body_ += num(map_x(xs[i])) + "," + num(map_y(ys[i]));
        if (i + 1 < xs.size()) body_.push_back(' ');
    }
    body_ += "\"/>\n";
    if (!label.empty()) legend_.push_back({label, color});
}

void SvgPlot::scatter(std::span<const double> xs, std::span<const double> ys,
                      const std::string& color, double radius, const std::string& label) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
        body_ += "<circle cx=\"" + num(map_x(xs[i])) + "\" cy=\"" + num(map_y(ys[i])) +
                 "\" r=\"" + num(radius) + "\" fill=\"" + color + "\" fill-opacity=\"0.5\"/>\n";
    }
    if (!label.empty()) legend_.push_back({label, color});
}

void SvgPlot::box(double x_center, double half_width, double whisker_lo, double q1,
                  double median, double q3, double whisker_hi, const std::string& color,
                  const std::string& label) {
    const double cx = map_x(x_center);
    const double xl = map_x(x_center - half_width);
    const double xr = map_x(x_center + half_width);
    const double y_lo = map_y(whisker_lo);
    const double y_q1 = map_y(q1);
    const double y_med = map_y(median);
    const double y_q3 = map_y(q3);
    const double y_hi = map_y(whisker_hi);
    auto line = [&](double x1, double y1, double x2, double y2) {
        body_ += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) +
                 "\" y2=\"" + num(y2) + "\" stroke=\"" + color + "\" stroke-width=\"1.5\"/>\n";
    };
    body_ += "<rect x=\"" + num(xl) + "\" y=\"" + num(y_q3) + "\" width=\"" + num(xr - xl) +
             "\" height=\"" + num(y_q1 - y_q3) + "\" fill=\"" + color +
             "\" fill-opacity=\"0.25\" stroke=\"" + color + "\"/>\n";
    line(xl, y_med, xr, y_med);
    line(cx, y_q3, cx, y_hi);
    line(cx, y_q1, cx, y_lo);
    line(cx + (xl - cx) * 0.5, y_hi, cx + (xr - cx) * 0.5, y_hi);
    line(cx + (xl - cx) * 0.5, y_lo, cx + (xr - cx) * 0.5, y_lo);
    if (!label.empty()) {
        body_ += "<text x=\"" + num(cx) + "\" y=\"" + num(kHeight - kBottom + 18) +
                 "\" font-size=\"12\" text-anchor=\"middle\">" + label + "</text>\n";
    }
}

std::string SvgPlot::render() const {
    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) +
           "\" height=\"" + num(kHeight) + "\" font-family=\"sans-serif\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + num(kWidth / 2) + "\" y=\"22\" font-size=\"15\" text-anchor=\"middle\">" +
           title_ + "</text>\n";

    // axes
    out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(kLeft) +
           "\" y2=\"" + num(kHeight - kBottom) + "\" stroke=\"black\"/>\n";
    out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kHeight - kBottom) + "\" x2=\"" +
           num(kWidth - kRight) + "\" y2=\"" + num(kHeight - kBottom) + "\" stroke=\"black\"/>\n";

    for (int i = 0; i <= 5; ++i) {
        const double fy = y_lo_ + (y_hi_ - y_lo_) * i / 5.0;
        const double py = map_y(fy);
        out += "<line x1=\"" + num(kLeft - 4) + "\" y1=\"" + num(py) + "\" x2=\"" + num(kLeft) +
               "\" y2=\"" + num(py) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(py + 4) +
               "\" font-size=\"11\" text-anchor=\"end\">" + num(fy) + "</text>\n";
        if (numeric_x_ticks_) {
            const double fx = x_lo_ + (x_hi_ - x_lo_) * i / 5.0;
            const double px = map_x(fx);
            out += "<line x1=\"" + num(px) + "\" y1=\"" + num(kHeight - kBottom) + "\" x2=\"" +
                   num(px) + "\" y2=\"" + num(kHeight - kBottom + 4) + "\" stroke=\"black\"/>\n";
            out += "<text x=\"" + num(px) + "\" y=\"" + num(kHeight - kBottom + 18) +
                   "\" font-size=\"11\" text-anchor=\"middle\">" + num(fx) + "</text>\n";
        }
    }

    out += "<text x=\"" + num((kLeft + kWidth - kRight) / 2) + "\" y=\"" + num(kHeight - 10) +
           "\" font-size=\"13\" text-anchor=\"middle\">" + x_label_ + "</text>\n";
    out += "<text x=\"16\" y=\"" + num((kTop + kHeight - kBottom) / 2) +
           "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
           num((kTop + kHeight - kBottom) / 2) + ")\">" + y_label_ + "</text>\n";

    double ly = kTop + 10;
    for (const Series& s : legend_) {
        out += "<rect x=\"" + num(kWidth - kRight - 150) + "\" y=\"" + num(ly - 9) +
               "\" width=\"12\" height=\"12\" fill=\"" + s.color + "\"/>\n";
        out += "<text x=\"" + num(kWidth - kRight - 132) + "\" y=\"" + num(ly + 2) +
               "\" font-size=\"12\">" + s.label + "</text>\n";
        ly += 18;
    }

    out += body_;
    out += "</svg>\n";
    return out;
}

}  // namespace qfi
