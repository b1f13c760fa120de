import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["tests/**/*.test.ts"],
    // The e2e suite boots the backing service in a child process; model
    // generation and startup dominate, so the budget is generous.
    testTimeout: 120_000,
    hookTimeout: 120_000,
  },
});
