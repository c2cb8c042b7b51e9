// Leaf-box inspection: hit-testing a click against the box dump and shaping
// the detail panel contents.

import type { LeafBox } from "./types.js";

/** The smallest (most refined) box under the point, or null off the tree.
 * Several boxes share a footprint when the angular ranges differ; preferring
 * the one with the fewest features ties the panel to the most informative
 * leaf of the stack unless a class filter narrows it down. */
export function boxAt(
  boxes: LeafBox[],
  x: number,
  y: number,
  cls?: LeafBox["class"],
): LeafBox | null {
  let best: LeafBox | null = null;
  for (const b of boxes) {
    if (x < b.x0 || x > b.x1 || y < b.y0 || y > b.y1) continue;
    if (cls && b.class !== cls) continue;
    if (
      best === null ||
      b.x1 - b.x0 < best.x1 - best.x0 ||
      (b.x1 - b.x0 === best.x1 - best.x0 && totalFeatures(b) > totalFeatures(best))
    ) {
      best = b;
    }
  }
  return best;
}

export function totalFeatures(box: LeafBox): number {
  return box.feature_counts.reduce((a, c) => a + c, 0);
}

export interface BoxDetail {
  cls: string;
  bounds: string;
  angular: string;
  featureTotal: number;
  perTriangle: number[];
}

export function describeBox(box: LeafBox): BoxDetail {
  return {
    cls: box.class,
    bounds: `[${box.x0.toFixed(2)}, ${box.y0.toFixed(2)}] .. [${box.x1.toFixed(2)}, ${box.y1.toFixed(2)}]`,
    angular: `${box.theta_lo_deg.toFixed(1)}° .. ${box.theta_hi_deg.toFixed(1)}°`,
    featureTotal: totalFeatures(box),
    perTriangle: box.feature_counts,
  };
}
