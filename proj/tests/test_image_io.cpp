#include <doctest.h>

#include "threshforge/image_io.hpp"
#include "threshforge/types.hpp"

#include "oracles.hpp"

#include <png.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

using namespace threshforge;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

void write_rgb_png(const std::string& path, int width, int height,
                   const std::vector<std::uint8_t>& rgb) {
    std::FILE* fp = std::fopen(path.c_str(), "wb");
    REQUIRE(fp != nullptr);
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr,
                                              nullptr);
    png_infop info = png_create_info_struct(png);
    REQUIRE(setjmp(png_jmpbuf(png)) == 0);
    png_init_io(png, fp);
    png_set_IHDR(png, info, width, height, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    std::vector<png_bytep> rows(height);
    for (int y = 0; y < height; ++y) {
        rows[y] = const_cast<png_bytep>(rgb.data() + static_cast<std::size_t>(y) * width * 3);
    }
    png_write_image(png, rows.data());
    png_write_end(png, info);
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
}

}  // namespace

TEST_CASE("PGM P5 round-trips losslessly") {
    const GrayImage img = oracles::random_image(31, 17, 5);
    const std::string path = temp_path("tf_roundtrip.pgm");
    write_image(img, path);
    CHECK(read_image(path) == img);
    std::filesystem::remove(path);
}

TEST_CASE("PGM P2 with comments parses") {
    const std::string path = temp_path("tf_ascii.pgm");
    write_file(path,
               "P2\n# a comment\n3 2\n# another\n255\n0 10 20\n255 254 253\n");
    const GrayImage img = read_image(path);
    CHECK(img.width == 3);
    CHECK(img.height == 2);
    CHECK(img.pixels == std::vector<std::uint8_t>{0, 10, 20, 255, 254, 253});
    std::filesystem::remove(path);
}

TEST_CASE("P2 and P5 encodings of the same raster read identically") {
    const GrayImage img = oracles::random_image(9, 9, 8);
    const std::string p5 = temp_path("tf_same.pgm");
    write_image(img, p5);

    std::string ascii = "P2\n9 9\n255\n";
    for (std::uint8_t p : img.pixels) ascii += std::to_string(p) + "\n";
    const std::string p2 = temp_path("tf_same_ascii.pgm");
    write_file(p2, ascii);

    CHECK(read_image(p5) == read_image(p2));
    std::filesystem::remove(p5);
    std::filesystem::remove(p2);
}

TEST_CASE("PGM rejections") {
    const std::string path = temp_path("tf_bad.pgm");

    write_file(path, "P5\n2 2\n65535\n\0\0\0\0");
    CHECK_THROWS_AS(read_image(path), FormatError);

    write_file(path, "P5\n4 4\n255\nab");
    CHECK_THROWS_AS(read_image(path), FormatError);

    write_file(path, "P7\n2 2\n255\nabcd");
    CHECK_THROWS_AS(read_image(path), FormatError);

    write_file(path, "P2\n2 1\n255\n12 600\n");
    CHECK_THROWS_AS(read_image(path), FormatError);

    std::filesystem::remove(path);
    CHECK_THROWS_AS(read_image(path), IoError);
}

TEST_CASE("grayscale PNG round-trips losslessly") {
    const GrayImage img = oracles::random_image(23, 29, 6);
    const std::string path = temp_path("tf_roundtrip.png");
    write_image(img, path);
    CHECK(read_image(path) == img);
    std::filesystem::remove(path);
}

TEST_CASE("RGB PNG input is converted through the luma weights") {
    const std::string path = temp_path("tf_rgb.png");
    const std::vector<std::uint8_t> rgb = {255, 255, 255, 0, 0,   0,
                                           100, 150, 200, 60, 60, 60};
    write_rgb_png(path, 2, 2, rgb);
    const GrayImage img = read_image(path);
    CHECK(img.pixels == std::vector<std::uint8_t>{255, 0, 141, 60});
    std::filesystem::remove(path);
}

TEST_CASE("masks serialize as 0 and 255") {
    BinaryMask mask(2, 2);
    mask.labels = {1, 0, 0, 1};
    const std::string path = temp_path("tf_mask.pgm");
    write_mask(mask, path);

    std::ifstream in(path, std::ios::binary);
    std::string content((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
    CHECK(content == std::string("P5\n2 2\n255\n\xFF\x00\x00\xFF", 15));

    const BinaryMask back = mask_from_gray(read_image(path));
    CHECK(back.labels == mask.labels);
    std::filesystem::remove(path);
}

TEST_CASE("write_image validates its arguments") {
    CHECK_THROWS_AS(write_image(GrayImage{}, temp_path("tf_empty.pgm")), EmptyImage);
    CHECK_THROWS_AS(write_image(GrayImage(2, 2, 7), temp_path("tf_bad.bmp")),
                    FormatError);
}
