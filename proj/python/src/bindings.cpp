#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>

#include "svt/bundle.hpp"
#include "svt/error.hpp"
#include "svt/keyframe.hpp"
#include "svt/metrics.hpp"
#include "svt/redundancy.hpp"
#include "svt/resample.hpp"
#include "svt/sequence_io.hpp"

namespace py = pybind11;
using namespace svt;

namespace {

using U8Array = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

// (H, W) is gray, (H, W, 3) is RGB. Frames are planar inside the library.
Frame frame_from_array(const U8Array& a) {
    if (a.ndim() != 2 && !(a.ndim() == 3 && a.shape(2) == 3)) {
        throw DimensionError("expected an (H, W) or (H, W, 3) uint8 array");
    }
    const int h = static_cast<int>(a.shape(0));
    const int w = static_cast<int>(a.shape(1));
    const Layout layout = a.ndim() == 2 ? Layout::Gray : Layout::Rgb;
    Frame f(w, h, layout);
    const std::uint8_t* src = a.data();
    if (layout == Layout::Gray) {
        std::memcpy(f.samples().data(), src, f.plane_size());
    } else {
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x)
                for (int c = 0; c < 3; ++c) f.at(x, y, c) = src[(static_cast<std::size_t>(y) * w + x) * 3 + c];
    }
    return f;
}

U8Array frame_to_array(const Frame& f) {
    if (f.layout() == Layout::Gray) {
        U8Array out({f.height(), f.width()});
        std::memcpy(out.mutable_data(), f.samples().data(), f.plane_size());
        return out;
    }
    U8Array out({f.height(), f.width(), 3});
    auto* dst = out.mutable_data();
    for (int y = 0; y < f.height(); ++y)
        for (int x = 0; x < f.width(); ++x)
            for (int c = 0; c < 3; ++c) dst[(static_cast<std::size_t>(y) * f.width() + x) * 3 + c] = f.at(x, y, c);
    return out;
}

VideoSequence video_from_array(const U8Array& a, FrameRate fps = {}) {
    if (a.ndim() != 3 && !(a.ndim() == 4 && a.shape(3) == 3)) {
        throw DimensionError("expected a (T, H, W) or (T, H, W, 3) uint8 array");
    }
    VideoSequence seq({}, fps);
    for (py::ssize_t t = 0; t < a.shape(0); ++t) {
        py::array view = a[py::int_(t)];
        seq.push_back(frame_from_array(U8Array::ensure(view)));
    }
    return seq;
}

U8Array video_to_array(const VideoSequence& seq) {
    std::vector<py::ssize_t> shape{static_cast<py::ssize_t>(seq.size()), seq.height(), seq.width()};
    if (seq.layout() != Layout::Gray) shape.push_back(3);
    U8Array out(shape);
    auto* dst = out.mutable_data();
    std::size_t offset = 0;
    for (const auto& f : seq) {
        U8Array one = frame_to_array(f);
        std::memcpy(dst + offset, one.data(), one.size());
        offset += one.size();
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Low-resolution video transmission core";

    static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
    static py::exception<DataError> data_error(m, "DataError", error.ptr());
    static py::exception<DimensionError> dimension_error(m, "DimensionError", data_error.ptr());
    static py::exception<FormatError> format_error(m, "FormatError", data_error.ptr());
    static py::exception<CorruptionError> corruption_error(m, "CorruptionError", format_error.ptr());
    static py::exception<IndexError> index_error(m, "FrameIndexError", data_error.ptr());
    static py::exception<ConfigError> config_error(m, "ConfigError", error.ptr());
    static py::exception<ExternalProcessError> external_error(m, "ExternalProcessError", error.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const CorruptionError& e) {
            corruption_error(e.what());
        } catch (const FormatError& e) {
            format_error(e.what());
        } catch (const DimensionError& e) {
            dimension_error(e.what());
        } catch (const IndexError& e) {
            index_error(e.what());
        } catch (const DataError& e) {
            data_error(e.what());
        } catch (const ConfigError& e) {
            config_error(e.what());
        } catch (const ExternalProcessError& e) {
            external_error(e.what());
        } catch (const Error& e) {
            error(e.what());
        }
    });

    // resample
    m.attr("SCALE") = kScale;
    m.def("kernel_weight", &kernel_weight, py::arg("t"));
    m.def("downsample", [](const U8Array& a) { return frame_to_array(downsample_4x(frame_from_array(a))); },
          py::arg("frame"));
    m.def("upsample", [](const U8Array& a) { return frame_to_array(upsample_4x(frame_from_array(a))); },
          py::arg("frame"));

    // metrics
    m.attr("PSNR_CAP") = kPsnrCap;
    m.def("mse", [](const U8Array& a, const U8Array& b) { return mse(frame_from_array(a), frame_from_array(b)); });
    m.def("psnr", [](const U8Array& a, const U8Array& b) { return psnr(frame_from_array(a), frame_from_array(b)); });
    m.def("ssim", [](const U8Array& a, const U8Array& b) { return ssim(frame_from_array(a), frame_from_array(b)); });
    m.def("interframe_psnr_curve", [](const U8Array& v) { return interframe_psnr_curve(video_from_array(v)); },
          py::arg("video"));
    m.def("bpp_saving", &bpp_saving, py::arg("baseline_bpp"), py::arg("system_bpp"));

    // key frames
    m.def(
        "fixed_interval",
        [](std::size_t frames, int k, bool include_last) { return fixed_interval(frames, k, include_last).values(); },
        py::arg("frame_count"), py::arg("k"), py::arg("include_last") = false);
    m.def("hann_window", &hann_window, py::arg("w"));
    m.def(
        "smooth_curve", [](const std::vector<double>& c, int w) { return smooth_curve(c, w); }, py::arg("curve"),
        py::arg("w"));
    m.def(
        "local_maxima", [](const std::vector<double>& c) { return local_maxima(c); }, py::arg("curve"));
    m.def(
        "select_adaptive",
        [](const std::vector<double>& curve, int k, int window, int min_spacing, bool include_endpoints,
           int max_interior) {
            SelectionConfig cfg;
            cfg.mode = SelectionMode::Adaptive;
            cfg.k = k;
            cfg.window = window;
            cfg.min_spacing = min_spacing;
            cfg.include_endpoints = include_endpoints;
            cfg.max_interior = max_interior;
            return select_adaptive(curve, cfg, curve.size() + 1).values();
        },
        py::arg("curve"), py::arg("k") = 33, py::arg("window") = 13, py::arg("min_spacing") = 0,
        py::arg("include_endpoints") = false, py::arg("max_interior") = 0);

    // redundancy
    m.def(
        "detect_redundant",
        [](const U8Array& v, double tau_int, double tau_mot, int mm, const std::vector<std::uint32_t>& exempt) {
            RedundancyConfig cfg{tau_int, tau_mot, mm};
            return detect_redundant(video_from_array(v), cfg, exempt).values();
        },
        py::arg("video"), py::arg("tau_int") = 0.5, py::arg("tau_mot") = 15.0, py::arg("m") = 2,
        py::arg("exempt") = std::vector<std::uint32_t>{});
    m.def(
        "drop_redundant",
        [](const U8Array& v, const std::vector<std::uint32_t>& idx) {
            return video_to_array(drop_redundant(video_from_array(v), RedundancyIndex(idx)));
        },
        py::arg("video"), py::arg("redundant"));
    m.def(
        "restore_redundant",
        [](const U8Array& v, const std::vector<std::uint32_t>& idx) {
            return video_to_array(restore_redundant(video_from_array(v), RedundancyIndex(idx)));
        },
        py::arg("surviving"), py::arg("redundant"));

    // files; colour comes back as RGB
    m.def(
        "read_raw",
        [](const std::string& path) {
            const VideoSequence seq = read_raw(path);
            VideoSequence out({}, seq.frame_rate());
            for (const auto& f : seq) out.push_back(f.layout() == Layout::Gray ? f : convert_layout(f, Layout::Rgb));
            return py::make_tuple(video_to_array(out), py::make_tuple(seq.frame_rate().num, seq.frame_rate().den));
        },
        py::arg("path"));
    m.def(
        "write_raw",
        [](const std::string& path, const U8Array& v, std::uint32_t fps_num, std::uint32_t fps_den) {
            write_raw(path, video_from_array(v, {fps_num, fps_den}));
        },
        py::arg("path"), py::arg("video"), py::arg("fps_num") = 25, py::arg("fps_den") = 1);
    m.def(
        "read_png", [](const std::string& path) { return frame_to_array(read_png(path)); }, py::arg("path"));
    m.def(
        "write_png", [](const std::string& path, const U8Array& a) { write_png(path, frame_from_array(a)); },
        py::arg("path"), py::arg("frame"));

    // container (raw codecs only)
    m.def(
        "pack",
        [](const U8Array& lr, const std::vector<U8Array>& keyframes, const std::vector<std::uint32_t>& keys,
           const std::vector<std::uint32_t>& redundant, std::uint32_t fps_num, std::uint32_t fps_den) {
            BundleContents c;
            c.lr = video_from_array(lr, {fps_num, fps_den});
            for (const auto& k : keyframes) c.keyframes.push_back(frame_from_array(k));
            c.keys = KeyFrameIndex(keys);
            c.redundant = RedundancyIndex(redundant);
            c.meta.hr_width = 4 * c.lr.width();
            c.meta.hr_height = 4 * c.lr.height();
            c.meta.layout = c.lr.layout();
            c.meta.fps = {fps_num, fps_den};
            c.meta.frame_count = static_cast<std::uint32_t>(c.lr.size() + c.redundant.size());
            const auto bytes = pack(c);
            return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
        },
        py::arg("lr"), py::arg("keyframes"), py::arg("keys"), py::arg("redundant") = std::vector<std::uint32_t>{},
        py::arg("fps_num") = 25, py::arg("fps_den") = 1);
    m.def(
        "unpack",
        [](const py::bytes& data) {
            const std::string s = data;
            const auto c = unpack(std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
            py::list keyframes;
            for (const auto& k : c.keyframes) keyframes.append(frame_to_array(k));
            py::dict out;
            out["lr"] = video_to_array(c.lr);
            out["keyframes"] = keyframes;
            out["keys"] = c.keys.values();
            out["redundant"] = c.redundant.values();
            out["hr_width"] = c.meta.hr_width;
            out["hr_height"] = c.meta.hr_height;
            out["frame_count"] = c.meta.frame_count;
            out["fps"] = py::make_tuple(c.meta.fps.num, c.meta.fps.den);
            return out;
        },
        py::arg("data"));
}
