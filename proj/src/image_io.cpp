#include "threshforge/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <vector>

namespace threshforge {

namespace {

bool has_suffix(const std::string& path, const std::string& suffix) {
    if (path.size() < suffix.size()) return false;
    return std::equal(suffix.begin(), suffix.end(), path.end() - suffix.size(),
                      [](char a, char b) { return a == std::tolower(static_cast<unsigned char>(b)); });
}

// Next PGM header token, skipping whitespace and # comments.
std::string next_token(std::istream& in) {
    std::string token;
    int ch = in.get();
    while (ch != EOF) {
        if (ch == '#') {
            while (ch != EOF && ch != '\n') ch = in.get();
        } else if (std::isspace(ch)) {
            ch = in.get();
        } else {
            break;
        }
    }
    while (ch != EOF && !std::isspace(ch) && ch != '#') {
        token.push_back(static_cast<char>(ch));
        ch = in.get();
    }
    // Leave the delimiter in the stream; P5 readers need to see the
    // single separator byte after the maxval token.
    if (ch != EOF) in.unget();
    return token;
}

int parse_header_int(std::istream& in, const std::string& what, const std::string& path) {
    const std::string token = next_token(in);
    if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos) {
        throw FormatError("bad PGM " + what + " in " + path);
    }
    return std::stoi(token);
}

GrayImage read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);

    const std::string magic = next_token(in);
    if (magic != "P2" && magic != "P5") {
        throw FormatError("unsupported PGM magic '" + magic + "' in " + path);
    }
    const int width = parse_header_int(in, "width", path);
    const int height = parse_header_int(in, "height", path);
    const int maxval = parse_header_int(in, "maxval", path);
    if (width <= 0 || height <= 0) throw FormatError("bad PGM dimensions in " + path);
    if (maxval != 255) {
        throw FormatError("PGM maxval must be 255, got " + std::to_string(maxval) +
                          " in " + path);
    }

    GrayImage img(width, height);
    if (magic == "P5") {
        // The maxval token is followed by exactly one whitespace byte.
        const int sep = in.get();
        if (sep == EOF || !std::isspace(sep)) {
            throw FormatError("missing raster separator in " + path);
        }
        in.read(reinterpret_cast<char*>(img.pixels.data()),
                static_cast<std::streamsize>(img.pixels.size()));
        if (static_cast<std::size_t>(in.gcount()) != img.pixels.size()) {
            throw FormatError("truncated PGM raster in " + path);
        }
    } else {
        for (std::size_t i = 0; i < img.pixels.size(); ++i) {
            const int v = parse_header_int(in, "pixel", path);
            if (v > 255) throw FormatError("PGM pixel above maxval in " + path);
            img.pixels[i] = static_cast<std::uint8_t>(v);
        }
    }
    return img;
}

struct PngReader {
    std::FILE* fp = nullptr;
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngReader() {
        if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
        if (fp) std::fclose(fp);
    }
};

struct PngWriter {
    std::FILE* fp = nullptr;
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngWriter() {
        if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
        if (fp) std::fclose(fp);
    }
};

GrayImage read_png_file(const std::string& path) {
    PngReader r;
    r.fp = std::fopen(path.c_str(), "rb");
    if (!r.fp) throw IoError("cannot open " + path);
    r.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!r.png) throw IoError("libpng init failed");
    r.info = png_create_info_struct(r.png);
    if (!r.info) throw IoError("libpng init failed");
    if (setjmp(png_jmpbuf(r.png))) {
        throw FormatError("libpng failed reading " + path);
    }

    png_init_io(r.png, r.fp);
    png_read_info(r.png, r.info);

    const png_uint_32 width = png_get_image_width(r.png, r.info);
    const png_uint_32 height = png_get_image_height(r.png, r.info);
    const int bit_depth = png_get_bit_depth(r.png, r.info);
    const int color_type = png_get_color_type(r.png, r.info);

    if (bit_depth != 8) {
        throw FormatError("only 8-bit PNG supported, got depth " +
                          std::to_string(bit_depth) + " in " + path);
    }
    if (color_type != PNG_COLOR_TYPE_GRAY && color_type != PNG_COLOR_TYPE_RGB) {
        throw FormatError("only grayscale or RGB PNG supported in " + path);
    }

    png_set_interlace_handling(r.png);
    png_read_update_info(r.png, r.info);

    const int channels = color_type == PNG_COLOR_TYPE_GRAY ? 1 : 3;
    std::vector<std::uint8_t> data(static_cast<std::size_t>(width) * height * channels);
    std::vector<png_bytep> rows(height);
    for (png_uint_32 y = 0; y < height; ++y) {
        rows[y] = data.data() + static_cast<std::size_t>(y) * width * channels;
    }
    png_read_image(r.png, rows.data());
    png_read_end(r.png, nullptr);

    if (channels == 3) {
        return to_grayscale(data, static_cast<int>(width), static_cast<int>(height));
    }
    GrayImage img(static_cast<int>(width), static_cast<int>(height));
    img.pixels = std::move(data);
    return img;
}

void write_png_file(const GrayImage& img, const std::string& path) {
    PngWriter w;
    w.fp = std::fopen(path.c_str(), "wb");
    if (!w.fp) throw IoError("cannot open " + path + " for writing");
    w.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!w.png) throw IoError("libpng init failed");
    w.info = png_create_info_struct(w.png);
    if (!w.info) throw IoError("libpng init failed");
    if (setjmp(png_jmpbuf(w.png))) {
        throw IoError("libpng failed writing " + path);
    }

    png_init_io(w.png, w.fp);
    png_set_IHDR(w.png, w.info, static_cast<png_uint_32>(img.width),
                 static_cast<png_uint_32>(img.height), 8, PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(w.png, w.info);

    std::vector<png_bytep> rows(img.height);
    for (int y = 0; y < img.height; ++y) {
        rows[y] = const_cast<png_bytep>(img.pixels.data() +
                                        static_cast<std::size_t>(y) * img.width);
    }
    png_write_image(w.png, rows.data());
    png_write_end(w.png, w.info);
}

void write_pgm(const GrayImage& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              static_cast<std::streamsize>(img.pixels.size()));
    if (!out) throw IoError("failed writing " + path);
}

}  // namespace

GrayImage read_image(const std::string& path) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw IoError("cannot open " + path);
    unsigned char magic[8] = {};
    probe.read(reinterpret_cast<char*>(magic), sizeof(magic));
    const std::streamsize got = probe.gcount();
    probe.close();

    if (got >= 2 && magic[0] == 'P' && (magic[1] == '2' || magic[1] == '5')) {
        return read_pgm(path);
    }
    if (got >= 8 && png_sig_cmp(magic, 0, 8) == 0) {
        return read_png_file(path);
    }
    throw FormatError("unrecognized image format in " + path);
}

void write_image(const GrayImage& img, const std::string& path) {
    if (img.empty()) throw EmptyImage("refusing to write an empty image");
    if (has_suffix(path, ".pgm")) {
        write_pgm(img, path);
    } else if (has_suffix(path, ".png")) {
        write_png_file(img, path);
    } else {
        throw FormatError("unsupported output extension in " + path +
                          " (expected .pgm or .png)");
    }
}

void write_mask(const BinaryMask& mask, const std::string& path) {
    write_image(mask_to_gray(mask), path);
}

}  // namespace threshforge
