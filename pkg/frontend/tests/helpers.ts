// Fixture-backed API stub: responses recorded from the live query service
// over the bundled demo corpus (Detroit 562 and friends).

import type {
  Api,
  CellLineList,
  CellLineSummary,
  EvidenceResponse,
  Profile,
  Stats,
} from "../src/api.js";
import { ApiError } from "../src/api.js";

import statsFixture from "./fixtures/stats.json";
import cellLinesFixture from "./fixtures/celllines.json";
import searchDetFixture from "./fixtures/search_det.json";
import detroitSummary from "./fixtures/detroit_summary.json";
import detroitProfile from "./fixtures/detroit_profile.json";
import detroitTp53Evidence from "./fixtures/detroit_tp53_evidence.json";

export const DETROIT = "cellosaurus:CVCL_1171";

export class FixtureApi implements Api {
  calls: Record<string, number> = {};

  private count(key: string): void {
    this.calls[key] = (this.calls[key] ?? 0) + 1;
  }

  async stats(): Promise<Stats> {
    this.count("stats");
    return statsFixture as Stats;
  }

  async searchCellLines(prefix: string): Promise<CellLineList> {
    this.count(`search:${prefix}`);
    if (prefix === "") return cellLinesFixture as CellLineList;
    if (prefix.toLowerCase().startsWith("det")) {
      return searchDetFixture as CellLineList;
    }
    return { total: 0, offset: 0, limit: 50, items: [] };
  }

  async cellLine(id: string): Promise<CellLineSummary> {
    this.count(`cellline:${id}`);
    if (id === DETROIT) return detroitSummary as CellLineSummary;
    throw new ApiError(404, `unknown entity '${id}'`);
  }

  async profile(id: string): Promise<Profile> {
    this.count(`profile:${id}`);
    if (id === DETROIT) return detroitProfile as Profile;
    throw new ApiError(404, `no CNV profile for ${id}`);
  }

  async evidence(id: string, partnerId: string): Promise<EvidenceResponse> {
    this.count(`evidence:${id}:${partnerId}`);
    if (id === DETROIT && partnerId === "hugo:TP53") {
      return detroitTp53Evidence as EvidenceResponse;
    }
    // all other partners share the TP53 record shape for rendering purposes
    return detroitTp53Evidence as EvidenceResponse;
  }
}

export function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}
