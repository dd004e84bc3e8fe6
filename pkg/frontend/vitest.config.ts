import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "jsdom",
    setupFiles: ["tests/setup.ts"],
    globalSetup: ["tests/server.ts"],
    testTimeout: 30000,
    hookTimeout: 90000,
  },
});
