// Runs before each test module: stop main.ts from auto-mounting, since
// the tests mount the app themselves against the spawned service.
(globalThis as Record<string, unknown>).__LATTIR_TEST__ = true;
