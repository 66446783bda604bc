// SVG copy-number profile plot. Rendering conventions follow the portal:
// gain frequencies rise above the axis in yellow, losses drop below in
// blue, and the mapping positions of ranked genes are pinned in red.

import type { Profile, ProfileMarker } from "./api.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export const GAIN_COLOR = "#e8b600";
export const LOSS_COLOR = "#2d7ff0";
export const MARKER_COLOR = "#d5232e";

const WIDTH = 940;
const HEIGHT = 220;
const TRACK_TOP = 70;
const MIDLINE = 140;
const BAR_MAX = 60;
const TRACK_GAP = 6;
const LABEL_WIDTH = 52;

const CHROMOSOME_ORDER = [
  ...Array.from({ length: 22 }, (_, i) => String(i + 1)), "X", "Y",
];

interface TrackLayout {
  chromosome: string;
  x: number;
  width: number;
  extent: number;
}

function svgEl<K extends keyof SVGElementTagNameMap>(tag: K): SVGElementTagNameMap[K] {
  return document.createElementNS(SVG_NS, tag);
}

function layoutTracks(profile: Profile): TrackLayout[] {
  const extents = new Map<string, number>();
  for (const bin of profile.bins) {
    const prev = extents.get(bin.chromosome) ?? 0;
    extents.set(bin.chromosome, Math.max(prev, bin.end));
  }
  const present = CHROMOSOME_ORDER.filter((c) => extents.has(c));
  const totalExtent = present.reduce((sum, c) => sum + extents.get(c)!, 0);
  const usable = WIDTH - TRACK_GAP * Math.max(0, present.length - 1);
  const tracks: TrackLayout[] = [];
  let x = 0;
  for (const chromosome of present) {
    const extent = extents.get(chromosome)!;
    const width = totalExtent ? (extent / totalExtent) * usable : 0;
    tracks.push({ chromosome, x, width, extent });
    x += width + TRACK_GAP;
  }
  return tracks;
}

export interface PlotHandle {
  highlightMarker(entityId: string | null): void;
}

export function renderProfilePlot(
  container: HTMLElement,
  profile: Profile,
  onMarkerClick?: (marker: ProfileMarker) => void,
): PlotHandle {
  container.textContent = "";
  const svg = svgEl("svg");
  svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);
  svg.setAttribute("class", "cnv-plot");
  svg.setAttribute("role", "img");

  const tracks = layoutTracks(profile);
  const byChromosome = new Map(tracks.map((t) => [t.chromosome, t]));

  for (const track of tracks) {
    const frame = svgEl("rect");
    frame.setAttribute("x", String(track.x));
    frame.setAttribute("y", String(TRACK_TOP));
    frame.setAttribute("width", String(track.width));
    frame.setAttribute("height", String((MIDLINE - TRACK_TOP) * 2));
    frame.setAttribute("class", "track-frame");
    svg.appendChild(frame);

    const label = svgEl("text");
    label.setAttribute("x", String(track.x + track.width / 2));
    label.setAttribute("y", String(HEIGHT - 4));
    label.setAttribute("text-anchor", "middle");
    label.setAttribute("class", "track-label");
    label.textContent = track.chromosome;
    svg.appendChild(label);
  }

  for (const bin of profile.bins) {
    const track = byChromosome.get(bin.chromosome);
    if (!track || track.extent === 0) continue;
    const x = track.x + (bin.start / track.extent) * track.width;
    const width = Math.max(1, ((bin.end - bin.start) / track.extent) * track.width);
    if (bin.gain_frequency > 0) {
      const height = bin.gain_frequency * BAR_MAX;
      const rect = svgEl("rect");
      rect.setAttribute("x", String(x));
      rect.setAttribute("y", String(MIDLINE - height));
      rect.setAttribute("width", String(width));
      rect.setAttribute("height", String(height));
      rect.setAttribute("fill", GAIN_COLOR);
      rect.setAttribute("class", "bin-gain");
      svg.appendChild(rect);
    }
    if (bin.loss_frequency > 0) {
      const height = bin.loss_frequency * BAR_MAX;
      const rect = svgEl("rect");
      rect.setAttribute("x", String(x));
      rect.setAttribute("y", String(MIDLINE));
      rect.setAttribute("width", String(width));
      rect.setAttribute("height", String(height));
      rect.setAttribute("fill", LOSS_COLOR);
      rect.setAttribute("class", "bin-loss");
      svg.appendChild(rect);
    }
  }

  const axis = svgEl("line");
  axis.setAttribute("x1", "0");
  axis.setAttribute("x2", String(WIDTH));
  axis.setAttribute("y1", String(MIDLINE));
  axis.setAttribute("y2", String(MIDLINE));
  axis.setAttribute("class", "axis");
  svg.appendChild(axis);

  // markers: red pins at the gene's genomic position; labels fan out with
  // leader lines when pins would collide at plot scale
  const placed: { marker: ProfileMarker; pinX: number }[] = [];
  for (const marker of profile.markers) {
    const track = byChromosome.get(marker.chromosome);
    if (!track || track.extent === 0) continue;
    const midpoint = (marker.start + marker.end) / 2;
    placed.push({
      marker,
      pinX: track.x + (midpoint / track.extent) * track.width,
    });
  }
  placed.sort((a, b) => a.pinX - b.pinX);
  const markerNodes = new Map<string, SVGGElement>();
  let nextLabelX = 0;
  for (const { marker, pinX } of placed) {
    const labelX = Math.min(Math.max(pinX, nextLabelX), WIDTH - LABEL_WIDTH / 2);
    nextLabelX = labelX + LABEL_WIDTH;

    const group = svgEl("g");
    group.setAttribute("class", "marker");
    group.dataset.entityId = marker.entity_id;

    const pin = svgEl("line");
    pin.setAttribute("x1", String(pinX));
    pin.setAttribute("x2", String(pinX));
    pin.setAttribute("y1", String(TRACK_TOP));
    pin.setAttribute("y2", String(MIDLINE + BAR_MAX));
    pin.setAttribute("stroke", MARKER_COLOR);
    pin.setAttribute("class", "marker-pin");
    group.appendChild(pin);

    const leader = svgEl("line");
    leader.setAttribute("x1", String(pinX));
    leader.setAttribute("x2", String(labelX));
    leader.setAttribute("y1", String(TRACK_TOP));
    leader.setAttribute("y2", String(28));
    leader.setAttribute("stroke", MARKER_COLOR);
    leader.setAttribute("class", "marker-leader");
    group.appendChild(leader);

    const label = svgEl("text");
    label.setAttribute("x", String(labelX));
    label.setAttribute("y", "20");
    label.setAttribute("text-anchor", "middle");
    label.setAttribute("fill", MARKER_COLOR);
    label.setAttribute("class", "marker-label");
    label.textContent = marker.label;
    group.appendChild(label);

    if (onMarkerClick) {
      group.addEventListener("click", () => onMarkerClick(marker));
    }
    svg.appendChild(group);
    markerNodes.set(marker.entity_id, group);
  }

  container.appendChild(svg);
  return {
    highlightMarker(entityId: string | null): void {
      for (const [id, node] of markerNodes) {
        node.classList.toggle("selected", id === entityId);
      }
    },
  };
}
