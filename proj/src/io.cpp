#include "skyrsim/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace skyrsim {

std::string format_double(double x) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.parent_path() / (target.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string svg_line_plot(const std::vector<double>& xs, const std::vector<double>& ys,
                          const std::string& title) {
    const int W = 800, H = 400, M = 50;
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    if (!xs.empty()) {
        xmin = *std::min_element(xs.begin(), xs.end());
        xmax = *std::max_element(xs.begin(), xs.end());
        ymin = *std::min_element(ys.begin(), ys.end());
        ymax = *std::max_element(ys.begin(), ys.end());
    }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << title
       << "</text>\n";
    os << "<line x1=\"" << M << "\" y1=\"" << H - M << "\" x2=\"" << W - M << "\" y2=\"" << H - M
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << M << "\" y1=\"" << M << "\" x2=\"" << M << "\" y2=\"" << H - M
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << M << "\" y=\"" << H - M + 20 << "\" font-size=\"11\">" << format_double(xmin)
       << "</text>\n";
    os << "<text x=\"" << W - M << "\" y=\"" << H - M + 20 << "\" text-anchor=\"end\" font-size=\"11\">"
       << format_double(xmax) << "</text>\n";
    os << "<text x=\"" << M - 5 << "\" y=\"" << H - M << "\" text-anchor=\"end\" font-size=\"11\">"
       << format_double(ymin) << "</text>\n";
    os << "<text x=\"" << M - 5 << "\" y=\"" << M + 5 << "\" text-anchor=\"end\" font-size=\"11\">"
       << format_double(ymax) << "</text>\n";
    os << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double px = M + (xs[i] - xmin) / (xmax - xmin) * (W - 2 * M);
        const double py = H - M - (ys[i] - ymin) / (ymax - ymin) * (H - 2 * M);
        os << format_double(px) << ',' << format_double(py) << ' ';
    }
    os << "\"/>\n</svg>\n";
    return os.str();
}

std::string report_to_json(const VerificationReport& rep) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : rep.checks) {
        nlohmann::json item;
        item["check_name"] = c.name;
        item["eq_tag"] = c.eq_tag;
        item["value"] = c.value;
        item["tol"] = c.tol;
        item["pass"] = c.pass;
        if (!c.details.empty()) item["details"] = c.details;
        arr.push_back(item);
    }
    nlohmann::json root;
    root["checks"] = arr;
    root["all_pass"] = rep.all_pass();
    return root.dump(2) + "\n";
}

}  // namespace skyrsim
