#pragma once

#include <string>
#include <vector>

namespace scenetext {

/// One dataset row: an image path with optional pixel ground truth and/or
/// box ground truth ("-" or empty column means absent).
struct ManifestEntry {
    std::string image;
    std::string mask;
    std::string boxes;
};

struct DatasetManifest {
    std::vector<ManifestEntry> entries;
};

/// Whitespace-separated columns `image [mask [boxes]]`, '#' comments.
/// Relative paths resolve against the manifest's directory. Every
/// referenced file must exist.
DatasetManifest load_manifest(const std::string& path);

}  // namespace scenetext
