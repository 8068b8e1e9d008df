#pragma once

#include <span>
#include <string>
#include <vector>

namespace qfi {

// Minimal self-contained SVG line/scatter/box plots; no external plotting
// dependency. Coordinates are data-space, mapped at render time.
class SvgPlot {
  public:
    SvgPlot(std::string title, std::string x_label, std::string y_label);

    void set_x_range(double lo, double hi);
    void set_y_range(double lo, double hi);
    void suppress_x_ticks() { numeric_x_ticks_ = false; }

    void polyline(std::span<const double> xs, std::span<const double> ys,
                  const std::string& color, const std::string& label = "");
    void scatter(std::span<const double> xs, std::span<const double> ys,
                 const std::string& color, double radius = 1.5,
                 const std::string& label = "");
    // Whisker box at a categorical x position.
    void box(double x_center, double half_width, double whisker_lo, double q1, double median,
             double q3, double whisker_hi, const std::string& color,
             const std::string& label = "");

    std::string render() const;

  private:
    struct Series {
        std::string label;
        std::string color;
    };

    double map_x(double x) const;
    double map_y(double y) const;

    std::string title_, x_label_, y_label_;
    double x_lo_ = 0.0, x_hi_ = 1.0, y_lo_ = 0.0, y_hi_ = 1.0;
    bool numeric_x_ticks_ = true;
    std::string body_;
    std::vector<Series> legend_;
};

}  // namespace qfi
