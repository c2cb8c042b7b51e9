// Viewport transform: world coordinates (y up) to canvas pixels (y down),
// locked to the environment bounding box.

export interface Viewport {
  scale: number;
  ox: number; // world x at canvas x=0
  oy: number; // world y at canvas y=height
  width: number;
  height: number;
}

export function fitViewport(
  bbox: [number, number, number, number],
  width: number,
  height: number,
): Viewport {
  const w = bbox[2] - bbox[0];
  const h = bbox[3] - bbox[1];
  const scale = Math.min(width / w, height / h);
  return { scale, ox: bbox[0], oy: bbox[1], width, height };
}

export function toCanvas(v: Viewport, x: number, y: number): [number, number] {
  return [(x - v.ox) * v.scale, v.height - (y - v.oy) * v.scale];
}

export function toWorld(v: Viewport, cx: number, cy: number): [number, number] {
  return [cx / v.scale + v.ox, (v.height - cy) / v.scale + v.oy];
}
