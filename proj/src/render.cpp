#include "apf/render.hpp"

#include <algorithm>
#include <sstream>

namespace apf {

namespace {

struct Roles {
  bool valid = false;
  Vec head, tail;
};

Roles roles_of(const std::vector<Vec> &pos, Algo algo) {
  Roles r;
  Configuration cfg{std::vector<Vec>(pos)};
  Election e = agree_frame(cfg, algo == Algo::MoveOpt ? ScanSide::Short : ScanSide::Long);
  if (e.symmetric) return r;
  r.valid = true;
  r.head = e.head_pos;
  r.tail = e.tail_pos;
  return r;
}

char light_suffix(Light l) {
  switch (l) {
    case Light::Head: return '*';
    case Light::Line: return '\'';
    default: return ' ';
  }
}

std::string ascii_frame(std::int64_t step, const std::vector<Vec> &pos,
                        const std::vector<Light> &light, const Rect &view, Algo algo) {
  Roles roles = roles_of(pos, algo);
  std::ostringstream os;
  os << "step " << step << "\n";
  for (std::int64_t y = view.max_y; y >= view.min_y; --y) {
    for (std::int64_t x = view.min_x; x <= view.max_x; ++x) {
      char glyph = '.';
      char suffix = ' ';
      for (std::size_t i = 0; i < pos.size(); ++i) {
        if (pos[i] != Vec{x, y}) continue;
        glyph = 'o';
        if (roles.valid && pos[i] == roles.head) glyph = 'H';
        if (roles.valid && pos[i] == roles.tail) glyph = 'T';
        suffix = light_suffix(light[i]);
      }
      os << glyph << suffix;
    }
    os << "\n";
  }
  return os.str();
}

std::string svg_frame(std::int64_t step, const std::vector<Vec> &pos,
                      const std::vector<Light> &light, const Rect &view, Algo algo) {
  Roles roles = roles_of(pos, algo);
  const std::int64_t cell = 20, pad = 10;
  std::int64_t w = (view.width() + 1) * cell + 2 * pad;
  std::int64_t h = (view.height() + 1) * cell + 2 * pad;
  auto px = [&](std::int64_t x) { return pad + (x - view.min_x) * cell + cell / 2; };
  auto py = [&](std::int64_t y) { return h - (pad + (y - view.min_y) * cell + cell / 2); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
     << "\">\n";
  os << "<!-- step " << step << " -->\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::int64_t x = view.min_x; x <= view.max_x; ++x)
    os << "<line x1=\"" << px(x) << "\" y1=\"" << py(view.min_y) << "\" x2=\"" << px(x)
       << "\" y2=\"" << py(view.max_y) << "\" stroke=\"#eee\"/>\n";
  for (std::int64_t y = view.min_y; y <= view.max_y; ++y)
    os << "<line x1=\"" << px(view.min_x) << "\" y1=\"" << py(y) << "\" x2=\""
       << px(view.max_x) << "\" y2=\"" << py(y) << "\" stroke=\"#eee\"/>\n";
  for (std::size_t i = 0; i < pos.size(); ++i) {
    const char *fill = "#444";
    if (light[i] == Light::Head) fill = "#d22";
    if (light[i] == Light::Line) fill = "#28c";
    const char *stroke = "none";
    if (roles.valid && pos[i] == roles.head) stroke = "#d22";
    if (roles.valid && pos[i] == roles.tail) stroke = "#2a2";
    os << "<circle cx=\"" << px(pos[i].x) << "\" cy=\"" << py(pos[i].y)
       << "\" r=\"7\" fill=\"" << fill << "\" stroke=\"" << stroke
       << "\" stroke-width=\"3\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace

std::vector<std::string> render_frames(const Trace &trace, RenderStyle style,
                                       std::int64_t stride) {
  if (stride < 1) stride = 1;

  // View box covering every position the trace ever visits.
  Rect view{0, 0, 0, 0};
  bool first = true;
  auto grow = [&](const Vec &p) {
    if (first) {
      view = {p.x, p.x, p.y, p.y};
      first = false;
      return;
    }
    view.min_x = std::min(view.min_x, p.x);
    view.max_x = std::max(view.max_x, p.x);
    view.min_y = std::min(view.min_y, p.y);
    view.max_y = std::max(view.max_y, p.y);
  };
  for (const Vec &p : trace.initial) grow(p);
  for (const Event &e : trace.events) grow(e.pos);

  std::vector<Vec> pos = trace.initial;
  std::vector<Light> light(pos.size(), Light::Off);
  std::vector<std::string> frames;
  std::size_t next_emit = 0;
  for (std::size_t i = 0; i <= trace.events.size(); ++i) {
    if (i == next_emit && i < std::max<std::size_t>(trace.events.size(), 1)) {
      std::int64_t step = i == 0 ? 0 : trace.events[i - 1].step;
      frames.push_back(style == RenderStyle::Ascii
                           ? ascii_frame(step, pos, light, view, trace.algo)
                           : svg_frame(step, pos, light, view, trace.algo));
      next_emit += static_cast<std::size_t>(stride);
    }
    if (i == trace.events.size()) break;
    const Event &e = trace.events[i];
    std::size_t r = static_cast<std::size_t>(e.robot);
    if (e.kind == Event::Kind::MoveApplied) pos[r] = e.pos;
    if (e.kind == Event::Kind::LightSet) light[r] = e.light;
  }
  return frames;
}

}  // namespace apf
