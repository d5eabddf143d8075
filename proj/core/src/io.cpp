#include "fcover/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace fcover {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace {

std::string cell_text(const Cell& c) {
    if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
    if (std::holds_alternative<double>(c)) return format_number(std::get<double>(c));
    return std::to_string(std::get<std::int64_t>(c));
}

}  // namespace

std::string to_csv(const Table& t) {
    std::string out;
    for (size_t i = 0; i < t.columns.size(); ++i) {
        if (i) out += ',';
        out += t.columns[i];
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += cell_text(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Table& t) {
    nlohmann::ordered_json doc;
    doc["schema"] = 1;
    doc["columns"] = t.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::array();
        for (const Cell& c : row) {
            if (std::holds_alternative<std::string>(c)) {
                r.push_back(std::get<std::string>(c));
            } else if (std::holds_alternative<double>(c)) {
                const double v = std::get<double>(c);
                if (std::isfinite(v)) r.push_back(v);
                else r.push_back(format_number(v));
            } else {
                r.push_back(std::get<std::int64_t>(c));
            }
        }
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

std::string to_svg_plot(const std::vector<double>& xs, const std::vector<double>& ys,
                        const std::string& x_label, const std::string& y_label) {
    if (xs.size() != ys.size() || xs.empty())
        throw std::invalid_argument("svg plot needs matching non-empty series");
    const double width = 640, height = 420, ml = 70, mr = 20, mt = 20, mb = 50;
    double xlo = xs[0], xhi = xs[0], ylo = ys[0], yhi = ys[0];
    for (size_t i = 0; i < xs.size(); ++i) {
        xlo = std::min(xlo, xs[i]);
        xhi = std::max(xhi, xs[i]);
        ylo = std::min(ylo, ys[i]);
        yhi = std::max(yhi, ys[i]);
    }
    if (xhi == xlo) xhi = xlo + 1.0;
    if (yhi == ylo) yhi = ylo + 1.0;
    auto px = [&](double x) { return ml + (x - xlo) / (xhi - xlo) * (width - ml - mr); };
    auto py = [&](double y) { return height - mb - (y - ylo) / (yhi - ylo) * (height - mt - mb); };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"420\">\n";
    s += "<!-- fcover plot v1 -->\n";
    s += "<rect width=\"640\" height=\"420\" fill=\"white\"/>\n";
    // axes
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n", ml,
                  height - mb, width - mr, height - mb);
    s += buf;
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n", ml, mt, ml,
                  height - mb);
    s += buf;
    for (int k = 0; k <= 4; ++k) {
        const double xv = xlo + (xhi - xlo) * k / 4.0;
        const double yv = ylo + (yhi - ylo) * k / 4.0;
        std::snprintf(buf, sizeof(buf),
                      "<text x=\"%g\" y=\"%g\" font-size=\"11\" text-anchor=\"middle\">%s</text>\n",
                      px(xv), height - mb + 16, format_number(xv).substr(0, 8).c_str());
        s += buf;
        std::snprintf(buf, sizeof(buf),
                      "<text x=\"%g\" y=\"%g\" font-size=\"11\" text-anchor=\"end\">%s</text>\n",
                      ml - 6, py(yv) + 4, format_number(yv).substr(0, 8).c_str());
        s += buf;
    }
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%g\" y=\"%g\" font-size=\"12\" text-anchor=\"middle\">%s</text>\n",
                  (ml + width - mr) / 2, height - 12, x_label.c_str());
    s += buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"14\" y=\"%g\" font-size=\"12\" text-anchor=\"middle\" "
                  "transform=\"rotate(-90 14 %g)\">%s</text>\n",
                  (mt + height - mb) / 2, (mt + height - mb) / 2, y_label.c_str());
    s += buf;

    s += "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < xs.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%s%.2f,%.2f", i ? " " : "", px(xs[i]), py(ys[i]));
        s += buf;
    }
    s += "\"/>\n";
    for (size_t i = 0; i < xs.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"2.5\" fill=\"#1f6fb2\"/>\n",
                      px(xs[i]), py(ys[i]));
        s += buf;
    }
    s += "</svg>\n";
    return s;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + tmp + " for writing");
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!f) throw std::runtime_error("short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

}  // namespace fcover
