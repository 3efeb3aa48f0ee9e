#include "scenetext/dataset.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace scenetext {

namespace fs = std::filesystem;

DatasetManifest load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open manifest " + path);
    const fs::path base = fs::path(path).parent_path();

    auto resolve = [&](const std::string& p) -> std::string {
        if (p.empty() || p == "-") return {};
        fs::path full = fs::path(p).is_absolute() ? fs::path(p) : base / p;
        if (!fs::exists(full))
            throw std::runtime_error("manifest " + path + ": missing file " + full.string());
        return full.string();
    };

    DatasetManifest manifest;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ss(line);
        std::string image, mask, boxes;
        if (!(ss >> image)) continue;
        ss >> mask >> boxes;
        ManifestEntry entry;
        try {
            entry.image = resolve(image);
            entry.mask = resolve(mask);
            entry.boxes = resolve(boxes);
        } catch (const std::runtime_error& ex) {
            throw std::runtime_error(std::string(ex.what()) + " (line " +
                                     std::to_string(line_no) + ")");
        }
        if (entry.image.empty())
            throw std::runtime_error("manifest " + path + ": line " + std::to_string(line_no) +
                                     " has no image path");
        manifest.entries.push_back(std::move(entry));
    }
    return manifest;
}

}  // namespace scenetext
